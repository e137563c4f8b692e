#include "mapfaa/instance.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace mapfaa {

namespace {
long long edge_key(Vertex u, Vertex v, int n) {
  if (u > v) std::swap(u, v);
  return (long long)u * n + v;
}
}  // namespace

Instance::Instance(int n_vertices, std::vector<std::pair<Vertex, Vertex>> edges,
                   std::vector<Vertex> starts, std::vector<Vertex> goals)
    : n_vertices_(n_vertices),
      edges_(std::move(edges)),
      starts_(std::move(starts)),
      goals_(std::move(goals)) {
  adj_.assign(n_vertices_, {});
  for (auto& [u, v] : edges_) {
    if (u < 0 || u >= n_vertices_ || v < 0 || v >= n_vertices_ || u == v)
      throw std::invalid_argument("Instance: bad edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  uniform_.assign(starts_.size(), std::nullopt);
  edge_dur_.assign(starts_.size(), {});
  check();
  finalize();
}

void Instance::check() const {
  if (starts_.size() != goals_.size())
    throw std::invalid_argument("Instance: starts/goals size mismatch");
  for (size_t i = 0; i < starts_.size(); ++i) {
    if (starts_[i] < 0 || starts_[i] >= n_vertices_ || goals_[i] < 0 ||
        goals_[i] >= n_vertices_)
      throw std::invalid_argument("Instance: start/goal out of range");
    for (size_t j = i + 1; j < starts_.size(); ++j) {
      if (starts_[i] == starts_[j])
        throw std::invalid_argument("Instance: duplicate start vertex");
      if (goals_[i] == goals_[j])
        throw std::invalid_argument("Instance: duplicate goal vertex");
    }
  }
}

void Instance::finalize() {
  reachable_.assign(starts_.size(), false);
  for (size_t i = 0; i < starts_.size(); ++i) {
    std::vector<bool> seen(n_vertices_, false);
    std::deque<Vertex> q{starts_[i]};
    seen[starts_[i]] = true;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (Vertex u : adj_[v])
        if (!seen[u]) { seen[u] = true; q.push_back(u); }
    }
    reachable_[i] = seen[goals_[i]];
  }
}

void Instance::set_uniform_duration(Agent i, TimePoint tau) {
  if (tau.is_zero() || tau.is_infinite())
    throw std::invalid_argument("Instance: duration must be positive finite");
  uniform_.at(i) = tau;
}

void Instance::set_edge_duration(Agent i, Vertex u, Vertex v, TimePoint tau) {
  if (tau.is_zero() || tau.is_infinite())
    throw std::invalid_argument("Instance: duration must be positive finite");
  if (!has_edge(u, v)) throw std::invalid_argument("Instance: no such edge");
  edge_dur_.at(i)[edge_key(u, v, n_vertices_)] = tau;
}

bool Instance::has_edge(Vertex u, Vertex v) const {
  const auto& nb = adj_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

TimePoint Instance::duration(Agent i, Vertex u, Vertex v) const {
  auto it = edge_dur_.at(i).find(edge_key(u, v, n_vertices_));
  if (it != edge_dur_.at(i).end()) return it->second;
  if (uniform_.at(i)) return *uniform_.at(i);
  throw std::invalid_argument("Instance: no duration for agent " +
                              std::to_string(i) + " on edge (" +
                              std::to_string(u) + "," + std::to_string(v) + ")");
}

std::vector<std::pair<Vertex, Interval>> occupancy(const Action& a) {
  std::vector<std::pair<Vertex, Interval>> out;
  if (a.is_move()) {
    out.emplace_back(a.from_vertex,
                     Interval::make(a.start, a.end, true, false));
    out.emplace_back(a.to_vertex, Interval::make(a.start, a.end, false, true));
  } else {
    out.emplace_back(a.from_vertex,
                     Interval::make(a.start, a.end, true, !a.end.is_infinite()));
  }
  return out;
}

std::optional<Interval> occupancy_at(const Action& a, Vertex v) {
  if (a.is_move()) {
    if (a.from_vertex == v) return Interval::make(a.start, a.end, true, false);
    if (a.to_vertex == v) return Interval::make(a.start, a.end, false, true);
    return std::nullopt;
  }
  if (a.from_vertex != v) return std::nullopt;
  return Interval::make(a.start, a.end, true, !a.end.is_infinite());
}

TimePoint path_cost(const Path& p) {
  if (p.actions.empty()) throw std::invalid_argument("path_cost: empty path");
  const Action& last = p.actions.back();
  if (last.is_move() || !last.end.is_infinite())
    throw std::invalid_argument("path_cost: path lacks terminal infinite wait");
  return last.start;
}

TimePoint sum_of_costs(const Solution& s) {
  TimePoint sum;
  for (const Path& p : s) sum = sum + p.cost;
  return sum;
}

std::vector<std::pair<Vertex, Interval>> merged_occupancy(const Path& p) {
  // Group raw occupancy intervals per vertex, then merge overlapping or
  // abutting ones. Consecutive actions at a shared vertex always abut.
  std::unordered_map<Vertex, std::vector<Interval>> raw;
  for (const Action& a : p.actions)
    for (auto& [v, ivl] : occupancy(a)) raw[v].push_back(ivl);
  std::vector<std::pair<Vertex, Interval>> merged;
  for (auto& [v, list] : raw) {
    std::sort(list.begin(), list.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    });
    Interval cur = list[0];
    for (size_t k = 1; k < list.size(); ++k) {
      const Interval& nxt = list[k];
      bool touches = nxt.lo < cur.hi ||
                     (nxt.lo == cur.hi && (nxt.lo_closed || cur.hi_closed));
      if (touches) {
        if (nxt.hi > cur.hi) { cur.hi = nxt.hi; cur.hi_closed = nxt.hi_closed; }
        else if (nxt.hi == cur.hi) cur.hi_closed = cur.hi_closed || nxt.hi_closed;
      } else {
        merged.emplace_back(v, cur);
        cur = nxt;
      }
    }
    merged.emplace_back(v, cur);
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return a.second.lo < b.second.lo;
            });
  return merged;
}

VertexTiming vertex_timing(const Instance& inst) {
  VertexTiming vt;
  int na = inst.num_agents(), nv = inst.num_vertices();
  vt.tau_in.assign(na, std::vector<std::optional<TimePoint>>(nv));
  vt.tau_out.assign(na, std::vector<std::optional<TimePoint>>(nv));
  for (Agent i = 0; i < na; ++i) {
    for (Vertex v = 0; v < nv; ++v) {
      std::optional<TimePoint> best;
      for (Vertex u : inst.neighbors(v)) {
        TimePoint tau = inst.duration(i, u, v);
        if (!best || tau < *best) best = tau;
      }
      // Undirected graph: the in and out minima coincide.
      vt.tau_in[i][v] = best;
      vt.tau_out[i][v] = best;
    }
  }
  return vt;
}

}  // namespace mapfaa
