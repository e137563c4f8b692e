#include "mapfaa/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace mapfaa {

namespace {

// Local Dijkstra, deliberately not sharing the planner's heuristic code.
std::vector<std::optional<TimePoint>> goal_dist(const Instance& inst, Agent a) {
  std::vector<std::optional<TimePoint>> dist(inst.num_vertices());
  using Item = std::pair<TimePoint, Vertex>;
  auto cmp = [](const Item& x, const Item& y) { return y.first < x.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  pq.push({TimePoint::from_int(0), inst.goal(a)});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (dist[v]) continue;
    dist[v] = d;
    for (Vertex u : inst.neighbors(v))
      if (!dist[u]) pq.push({d + inst.duration(a, v, u), u});
  }
  return dist;
}

struct AState {
  Vertex v;
  TimePoint b;   // next decision time
  TimePoint ps;  // start of the current contiguous presence at v
  bool finished = false;
  int last1 = -1, last2 = -1;  // most recent committed actions (arena indices)
};

struct JNode {
  std::vector<AState> agents;
  int parent = -1;
  int act = -1;  // arena index of the action that produced this node
};

std::string action_sig(const Action& a) {
  return std::to_string((int)a.kind) + "," + std::to_string(a.from_vertex) + "," +
         std::to_string(a.to_vertex) + "," + a.start.str() + "," + a.end.str();
}

}  // namespace

OracleResult oracle_solve(const Instance& inst, const OracleBudget& budget) {
  auto t0 = std::chrono::steady_clock::now();
  OracleResult res;
  auto finish = [&](Outcome o) -> OracleResult& {
    res.outcome = o;
    res.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
  };

  const int n = inst.num_agents();
  std::vector<std::vector<std::optional<TimePoint>>> h(n);
  for (Agent a = 0; a < n; ++a) {
    h[a] = goal_dist(inst, a);
    if (!h[a][inst.start(a)]) return finish(Outcome::Unsolvable);
  }

  // Lattice step 1/L, L = lcm of all duration denominators.
  long long L = 1;
  for (Agent a = 0; a < n; ++a)
    for (Vertex v = 0; v < inst.num_vertices(); ++v)
      for (Vertex u : inst.neighbors(v))
        L = std::lcm(L, inst.duration(a, v, u).den());
  const TimePoint step = TimePoint::ratio(1, L);

  std::vector<Action> arena;
  std::vector<JNode> nodes;

  auto lb = [&](const AState& s, Agent a) -> TimePoint {
    if (s.finished) return s.ps;
    if (s.v == inst.goal(a)) return s.ps;
    return s.b + *h[a][s.v];
  };
  auto fvalue = [&](const JNode& nd) {
    TimePoint f = TimePoint::from_int(0);
    for (Agent a = 0; a < n; ++a) f = f + lb(nd.agents[a], a);
    return f;
  };
  auto sum_b = [&](const JNode& nd) {
    TimePoint s = TimePoint::from_int(0);
    for (const AState& a : nd.agents)
      if (!a.finished) s = s + a.b;
    return s;
  };
  auto key_of = [&](const JNode& nd) {
    std::string k;
    for (const AState& a : nd.agents) {
      k += a.finished ? "F" : "-";
      k += std::to_string(a.v) + "|" + a.b.str() + "|" + a.ps.str() + "|";
      k += (a.last1 >= 0 ? action_sig(arena[a.last1]) : "") + "|";
      k += (a.last2 >= 0 ? action_sig(arena[a.last2]) : "") + ";";
    }
    return k;
  };

  struct Entry {
    TimePoint f;
    int unfinished;
    TimePoint sum_b;
    long long seq;
    int id;
  };
  auto after = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return b.f < a.f;
    if (a.unfinished != b.unfinished) return a.unfinished > b.unfinished;
    if (a.sum_b != b.sum_b) return b.sum_b < a.sum_b;
    return a.seq > b.seq;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(after)> open(after);
  std::unordered_set<std::string> seen;

  long long seq = 0;
  {
    JNode root;
    root.agents.resize(n);
    for (Agent a = 0; a < n; ++a)
      root.agents[a] = {inst.start(a), TimePoint::from_int(0), TimePoint::from_int(0)};
    seen.insert(key_of(root));
    nodes.push_back(std::move(root));
    open.push({fvalue(nodes[0]), n, sum_b(nodes[0]), seq++, 0});
  }

  bool horizon_pruned = false;
  auto collides = [&](const Action& cand, const AState& other) {
    for (int li : {other.last1, other.last2}) {
      if (li < 0) continue;
      for (const auto& [v1, i1] : occupancy(cand))
        for (const auto& [v2, i2] : occupancy(arena[li]))
          if (v1 == v2 && overlap(i1, i2)) return true;
    }
    return false;
  };

  while (!open.empty()) {
    if (budget.time_limit_s &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
            *budget.time_limit_s)
      return finish(Outcome::TimedOut);
    if (budget.expansion_limit && res.expansions >= *budget.expansion_limit)
      return finish(Outcome::TimedOut);

    Entry top = open.top();
    open.pop();
    // Nodes are never re-pushed, so every entry is current.
    bool all_done = true;
    for (const AState& a : nodes[top.id].agents)
      if (!a.finished) { all_done = false; break; }
    if (all_done) {
      // Reconstruct per-agent action lists, coalescing contiguous waits.
      std::vector<std::vector<Action>> acts(n);
      std::vector<std::pair<Agent, int>> trail;
      for (int id = top.id; nodes[id].parent >= 0; id = nodes[id].parent) {
        const JNode& nd = nodes[id];
        Agent a = arena[nd.act].agent;
        trail.push_back({a, nd.act});
      }
      std::reverse(trail.begin(), trail.end());
      for (auto [a, ai] : trail) {
        const Action& act = arena[ai];
        auto& list = acts[a];
        if (!list.empty() && !list.back().is_move() && !act.is_move() &&
            list.back().to_vertex == act.from_vertex && list.back().end == act.start)
          list.back().end = act.end;
        else
          list.push_back(act);
      }
      res.solution.resize(n);
      TimePoint soc = TimePoint::from_int(0);
      for (Agent a = 0; a < n; ++a) {
        res.solution[a].actions = std::move(acts[a]);
        res.solution[a].cost = res.solution[a].actions.back().start;
        soc = soc + res.solution[a].cost;
      }
      res.soc = soc;
      return finish(Outcome::Solved);
    }

    ++res.expansions;
    // Act for the unfinished agent with the earliest decision time.
    Agent i = -1;
    for (Agent a = 0; a < n; ++a) {
      const AState& s = nodes[top.id].agents[a];
      if (s.finished) continue;
      if (i < 0 || s.b < nodes[top.id].agents[i].b) i = a;
    }
    const AState cur = nodes[top.id].agents[i];

    std::vector<Action> cands;
    cands.push_back(Action::wait(i, cur.v, cur.b, cur.b + step));
    for (Vertex u : inst.neighbors(cur.v))
      cands.push_back(
          Action::move(i, cur.v, u, cur.b, cur.b + inst.duration(i, cur.v, u)));
    if (cur.v == inst.goal(i))
      cands.push_back(Action::wait(i, cur.v, cur.b, TimePoint::infinity()));

    for (const Action& cand : cands) {
      bool is_finish = cand.end.is_infinite();
      if (!is_finish && budget.horizon && *budget.horizon < cand.end) {
        horizon_pruned = true;
        continue;
      }
      bool bad = false;
      for (Agent j = 0; j < n && !bad; ++j)
        if (j != i && collides(cand, nodes[top.id].agents[j])) bad = true;
      if (bad) continue;

      JNode child = nodes[top.id];
      child.parent = top.id;
      AState& s = child.agents[i];
      int ai = (int)arena.size();
      child.act = ai;
      if (is_finish) {
        s.finished = true;
        // Cost is the start of the contiguous stay, not the decision time.
        s.ps = cur.ps;
      } else if (cand.is_move()) {
        s.v = cand.to_vertex;
        s.b = cand.end;
        s.ps = cand.end;
      } else {
        s.b = cand.end;
      }
      s.last2 = s.last1;
      s.last1 = ai;
      arena.push_back(cand);
      std::string k = key_of(child);
      if (!seen.insert(k).second) {
        arena.pop_back();
        continue;
      }
      int id = (int)nodes.size();
      nodes.push_back(std::move(child));
      open.push({fvalue(nodes[id]), [&] {
                   int u = 0;
                   for (const AState& a : nodes[id].agents)
                     if (!a.finished) ++u;
                   return u;
                 }(),
                 sum_b(nodes[id]), seq++, id});
    }
  }
  return finish(horizon_pruned ? Outcome::TimedOut : Outcome::Unsolvable);
}

}  // namespace mapfaa
