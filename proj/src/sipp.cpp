#include "mapfaa/sipp.hpp"

#include <algorithm>
#include <cassert>
#include <queue>

namespace mapfaa {

namespace {

// Smallest incident move duration at v for this agent; nullopt if isolated.
std::optional<TimePoint> min_incident(const Instance& inst, Agent a, Vertex v) {
  std::optional<TimePoint> best;
  for (Vertex u : inst.neighbors(v)) {
    TimePoint d = inst.duration(a, v, u);
    if (!best || d < *best) best = d;
  }
  return best;
}

}  // namespace

SafeIntervalTable build_safe_intervals(Agent agent,
                                       const std::vector<Constraint>& constraints,
                                       const Instance& inst) {
  int n = inst.num_vertices();
  SafeIntervalTable t;
  t.wait.resize(n);
  t.entry_windows.resize(n);
  t.exit_windows.resize(n);
  t.oc_points.resize(n);

  // Collect wait cuts and occupancy points per vertex, motion windows per
  // wildcard pattern / edge.
  std::vector<std::vector<Interval>> wait_cuts(n);
  for (const Constraint& c : constraints) {
    if (c.agent != agent) continue;
    switch (c.kind) {
      case ConstraintKind::Wait:
        wait_cuts[c.vertex].push_back(Interval::half_open(c.lo, c.hi));
        break;
      case ConstraintKind::Occupancy:
        t.oc_points[c.vertex].push_back(c.lo);
        break;
      case ConstraintKind::Motion: {
        Interval w = Interval::half_open(c.lo, c.hi);
        if (!w.valid()) break;
        if (c.from >= 0 && c.to >= 0)
          t.edge_windows[(long long)c.from * n + c.to].push_back(w);
        else if (c.to >= 0)
          t.entry_windows[c.to].push_back(w);
        else if (c.from >= 0)
          t.exit_windows[c.from].push_back(w);
        break;
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    std::sort(t.oc_points[v].begin(), t.oc_points[v].end());
    t.oc_points[v].erase(std::unique(t.oc_points[v].begin(), t.oc_points[v].end()),
                         t.oc_points[v].end());

    std::vector<Interval> pieces{Interval::ray(TimePoint::from_int(0))};
    auto cut_all = [&pieces](const Interval& cut) {
      if (!cut.valid()) return;
      std::vector<Interval> next;
      for (const Interval& p : pieces)
        for (const Interval& q : subtract(p, cut)) next.push_back(q);
      pieces = std::move(next);
    };
    for (const Interval& c : wait_cuts[v]) cut_all(c);

    // An occupancy point t at v renders waiting impossible over
    // [t - tau_out, t + tau_in): any presence there either contains t or
    // forces a move whose start window around t is forbidden. For this
    // agent tau_in = tau_out = the minimum incident duration.
    auto tau = min_incident(inst, agent, v);
    std::vector<TimePoint> departable_his;
    for (const TimePoint& p : t.oc_points[v]) {
      if (tau) {
        TimePoint lo = *tau < p ? p - *tau : TimePoint::from_int(0);
        cut_all(Interval::half_open(lo, p + *tau));
        if (*tau < p || *tau == p) departable_his.push_back(p - *tau);
      } else {
        // Isolated vertex: only the point itself is unusable.
        cut_all(Interval::point(p));
      }
    }

    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    auto in_wait_cut = [&](const TimePoint& x) {
      for (const Interval& c : wait_cuts[v])
        if (c.valid() && c.contains(x)) return true;
      return false;
    };
    for (const Interval& p : pieces) {
      SafeInterval si;
      si.ivl = p;
      if (!p.hi.is_infinite() && !p.hi_closed) {
        for (const TimePoint& d : departable_his)
          if (d == p.hi && !in_wait_cut(d)) { si.hi_departable = true; break; }
      }
      t.wait[v].push_back(si);
    }

    std::sort(t.entry_windows[v].begin(), t.entry_windows[v].end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::sort(t.exit_windows[v].begin(), t.exit_windows[v].end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  }
  for (auto& [k, ws] : t.edge_windows)
    std::sort(ws.begin(), ws.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return t;
}

SoftTable build_soft_table(const Instance& inst, const Solution& paths, Agent skip) {
  SoftTable s;
  s.occ.resize(inst.num_vertices());
  for (Agent a = 0; a < (int)paths.size(); ++a) {
    if (a == skip || paths[a].actions.empty()) continue;
    for (const auto& [v, ivl] : merged_occupancy(paths[a])) s.occ[v].push_back(ivl);
  }
  for (auto& vec : s.occ)
    std::sort(vec.begin(), vec.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return s;
}

std::vector<std::optional<TimePoint>> heuristic(const Instance& inst, Agent agent) {
  int n = inst.num_vertices();
  std::vector<std::optional<TimePoint>> dist(n);
  using Item = std::pair<TimePoint, Vertex>;
  auto cmp = [](const Item& a, const Item& b) {
    return b.first < a.first || (!(a.first < b.first) && b.second < a.second);
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  pq.push({TimePoint::from_int(0), inst.goal(agent)});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (dist[v]) continue;
    dist[v] = d;
    for (Vertex u : inst.neighbors(v))
      if (!dist[u]) pq.push({d + inst.duration(agent, v, u), u});
  }
  return dist;
}

namespace {

struct Node {
  Vertex v;
  int ivl;              // index into table.wait[v]
  TimePoint arr;        // earliest arrival into this safe interval
  long long soft;       // committed soft-conflict count along the path
  int cw;               // soft intervals overlapping the pending wait here
  int parent;           // node index, -1 at root
  TimePoint dep_parent; // departure time from the parent's vertex
};

struct OpenEntry {
  TimePoint f;
  long long soft_key;
  TimePoint g;
  Vertex v;
  int ivl;
  int id;
};

// true when a should be popped after b.
bool open_after(const OpenEntry& a, const OpenEntry& b) {
  if (a.f != b.f) return b.f < a.f;
  if (a.soft_key != b.soft_key) return a.soft_key > b.soft_key;
  if (a.g != b.g) return a.g < b.g;  // larger g first
  if (a.v != b.v) return a.v > b.v;
  if (a.ivl != b.ivl) return a.ivl > b.ivl;
  return a.id > b.id;
}

int count_overlaps(const std::vector<Interval>& occ, const Interval& span) {
  if (!span.valid()) return 0;
  int c = 0;
  for (const Interval& f : occ)
    if (overlap(f, span)) ++c;
  return c;
}

std::optional<Path> plan(const Instance& inst, Agent agent,
                         const std::vector<Constraint>& constraints,
                         const SoftTable* soft, Deadline deadline,
                         std::vector<ExpandedState>* trace = nullptr) {
  const int n = inst.num_vertices();
  SafeIntervalTable table = build_safe_intervals(agent, constraints, inst);
  std::vector<std::optional<TimePoint>> h = heuristic(inst, agent);
  const Vertex vs = inst.start(agent), vg = inst.goal(agent);
  if (!h[vs]) return std::nullopt;

  std::vector<Node> nodes;
  auto cmp = [](const OpenEntry& a, const OpenEntry& b) { return open_after(a, b); };
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, decltype(cmp)> open(cmp);

  // Presence at the state's vertex from time x through its departure at
  // time d is legal iff [x, d] stays inside the interval, allowing d == hi
  // only on departable boundaries.
  auto presence_ok = [&](const SafeInterval& si, const TimePoint& d) {
    if (si.ivl.contains(d)) return true;
    return si.hi_departable && !si.ivl.hi.is_infinite() && d == si.ivl.hi;
  };

  // Soft-conflict bookkeeping.
  auto soft_at = [&](Vertex v) -> const std::vector<Interval>* {
    return soft ? &soft->occ[v] : nullptr;
  };
  auto wait_cw = [&](Vertex v, const TimePoint& arr, const Interval& ivl) -> int {
    const auto* occ = soft_at(v);
    if (!occ) return 0;
    Interval span = (arr < ivl.hi) ? Interval::half_open(arr, ivl.hi)
                                   : Interval::point(arr);
    return count_overlaps(*occ, span);
  };

  std::unordered_map<long long, std::vector<int>> by_state;
  auto push_state = [&](Vertex v, int ivl, TimePoint arr, long long sc, int parent,
                        TimePoint dep) {
    if (!h[v]) return;
    int cw = wait_cw(v, arr, table.wait[v][ivl].ivl);
    if (trace) trace->push_back({v, arr, table.wait[v][ivl].ivl.hi, cw});
    // Dominance within (v, interval, cw): keep states not beaten on both
    // arrival time and committed soft count.
    auto& bucket = by_state[((long long)v << 22) | ((long long)ivl << 4) | (cw & 15)];
    for (int oi : bucket) {
      const Node& o = nodes[oi];
      if (o.cw != cw) continue;
      if (!(arr < o.arr) && o.soft <= sc) return;
    }
    int id = (int)nodes.size();
    nodes.push_back({v, ivl, arr, sc, cw, parent, dep});
    bucket.push_back(id);
    open.push({arr + *h[v], sc + cw, arr, v, ivl, id});
  };

  // Root state.
  {
    TimePoint zero = TimePoint::from_int(0);
    int idx = -1;
    for (int i = 0; i < (int)table.wait[vs].size(); ++i)
      if (table.wait[vs][i].ivl.contains(zero)) { idx = i; break; }
    if (idx < 0) return std::nullopt;
    push_state(vs, idx, zero, 0, -1, zero);
  }

  // Earliest legal departure from v at or after x0 for the move v->u of
  // duration tau, honoring motion windows and occupancy points at both
  // endpoints plus presence limits of the source interval.
  auto earliest_departure = [&](Vertex v, const SafeInterval& sv, Vertex u,
                                const TimePoint& tau,
                                TimePoint x) -> std::optional<TimePoint> {
    const auto* ew = table.edge(v, u, n);
    size_t guard = 4 + table.exit_windows[v].size() + table.entry_windows[u].size() +
                   table.oc_points[u].size() + (ew ? ew->size() : 0);
    for (size_t it = 0; it <= guard; ++it) {
      bool bumped = false;
      auto bump_windows = [&](const std::vector<Interval>& ws) {
        for (const Interval& w : ws)
          if (w.contains(x)) { x = w.hi; bumped = true; }
      };
      bump_windows(table.exit_windows[v]);
      bump_windows(table.entry_windows[u]);
      if (ew) bump_windows(*ew);
      // Occupancy at the target forbids move starts in [t - tau, t).
      for (const TimePoint& t : table.oc_points[u])
        if (x < t && !(x + tau < t)) { x = t; bumped = true; }
      if (bumped) continue;
      if (!presence_ok(sv, x)) return std::nullopt;
      // Occupancy at the source forbids move starts in (t - tau, t]; no
      // later start within this interval can help, because presence up to
      // such a start would contain t.
      for (const TimePoint& t : table.oc_points[v]) {
        bool in_window = (t < x + tau) && !(t < x);  // t in [x, x+tau)
        if (in_window) return std::nullopt;
      }
      return x;
    }
    return std::nullopt;
  };

  int pops = 0;
  while (!open.empty()) {
    if (deadline && (++pops & 0x3F) == 0 &&
        std::chrono::steady_clock::now() > *deadline)
      throw PlannerTimeout();
    OpenEntry top = open.top();
    open.pop();
    Node cur = nodes[top.id];
    const SafeInterval& si = table.wait[cur.v][cur.ivl];
    if (cur.v == vg && si.ivl.hi.is_infinite()) {
      // Reconstruct: walk parents collecting (vertex, arrival, departure).
      std::vector<std::tuple<Vertex, TimePoint, TimePoint>> chain;
      for (int id = top.id; id >= 0;) {
        const Node& nd = nodes[id];
        chain.push_back({nd.v, nd.arr, nd.dep_parent});
        id = nd.parent;
      }
      std::reverse(chain.begin(), chain.end());
      Path p;
      for (size_t i = 0; i + 1 < chain.size(); ++i) {
        auto [v, arr, _] = chain[i];
        auto [u, arr2, dep] = chain[i + 1];
        if (arr < dep) p.actions.push_back(Action::wait(agent, v, arr, dep));
        p.actions.push_back(Action::move(agent, v, u, dep, arr2));
      }
      auto [gv, garr, _] = chain.back();
      p.actions.push_back(Action::wait(agent, gv, garr, TimePoint::infinity()));
      p.cost = garr;
      return p;
    }

    for (Vertex u : inst.neighbors(cur.v)) {
      TimePoint tau = inst.duration(agent, cur.v, u);
      for (int j = 0; j < (int)table.wait[u].size(); ++j) {
        const SafeInterval& sj = table.wait[u][j];
        if (!sj.ivl.hi.is_infinite() && sj.ivl.hi < cur.arr + tau) continue;
        auto arrival_ok = [&](const TimePoint& y) {
          if (sj.ivl.contains(y)) return true;
          return sj.hi_departable && !sj.ivl.hi.is_infinite() && y == sj.ivl.hi;
        };
        auto try_from = [&](TimePoint x0) -> std::optional<std::pair<TimePoint, TimePoint>> {
          if (x0 < cur.arr) x0 = cur.arr;
          auto x = earliest_departure(cur.v, si, u, tau, x0);
          if (!x) return std::nullopt;
          TimePoint y = *x + tau;
          if (!arrival_ok(y)) return std::nullopt;
          return std::make_pair(*x, y);
        };
        // Earliest candidate: arrive no earlier than the interval opens.
        TimePoint x0 = cur.arr;
        if (x0 + tau < sj.ivl.lo) x0 = sj.ivl.lo - tau;
        std::vector<std::pair<TimePoint, TimePoint>> cands;
        if (auto c = try_from(x0)) cands.push_back(*c);
        if (soft) {
          // Later departures that clear a soft interval at the target: the
          // merged foreign occupancies are right-open at finite his, so
          // arriving exactly at hi avoids that interval.
          for (const Interval& f : soft->occ[u]) {
            if (f.hi.is_infinite() || f.hi < tau) continue;
            TimePoint xc = f.hi - tau;
            if (!cands.empty() && !(cands.front().first < xc)) continue;
            if (auto c = try_from(xc)) cands.push_back(*c);
          }
          std::sort(cands.begin(), cands.end());
          cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        }
        for (auto& [x, y] : cands) {
          long long sc = cur.soft;
          if (soft) {
            // Commit the stay at cur.v (wait plus the out-move's source
            // occupancy) and the in-move occupancy at u.
            sc += count_overlaps(soft->occ[cur.v],
                                 Interval::half_open(cur.arr, x + tau));
            sc += count_overlaps(soft->occ[u],
                                 Interval::make(x, y, false, true));
          }
          push_state(u, j, y, sc, top.id, x);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Path> sipp_plan(const Instance& inst, Agent agent,
                              const std::vector<Constraint>& constraints,
                              Deadline deadline) {
  return plan(inst, agent, constraints, nullptr, deadline);
}

std::optional<Path> sipps_wc_plan(const Instance& inst, Agent agent,
                                  const std::vector<Constraint>& constraints,
                                  const SoftTable& soft, Deadline deadline,
                                  std::vector<ExpandedState>* trace) {
  return plan(inst, agent, constraints, &soft, deadline, trace);
}

bool path_respects(const std::vector<Constraint>& cs, const Path& p) {
  std::vector<Action> acts = p.actions;
  for (size_t i = 0; i + 1 < p.actions.size(); ++i) {
    const Action& a = p.actions[i];
    const Action& b = p.actions[i + 1];
    if (a.is_move() && b.is_move())
      acts.push_back(Action::wait(a.agent, a.to_vertex, a.end, b.start));
  }
  for (const Constraint& c : cs)
    for (const Action& a : acts)
      if (violates(c, a)) return false;
  return true;
}

}  // namespace mapfaa
