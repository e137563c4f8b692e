#include "mapfaa/conflict.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mapfaa {

namespace {

enum class Role { In, Out, Wait, None };

Role role_at(const Action& a, Vertex v) {
  if (a.is_move()) {
    if (a.to_vertex == v) return Role::In;
    if (a.from_vertex == v) return Role::Out;
    return Role::None;
  }
  return a.from_vertex == v ? Role::Wait : Role::None;
}

}  // namespace

Conflict classify(const Action& a1, const Action& a2, Vertex v) {
  Role r1 = role_at(a1, v), r2 = role_at(a2, v);
  if (r1 == Role::None || r2 == Role::None)
    throw std::invalid_argument("classify: action does not touch vertex");
  auto o1 = occupancy_at(a1, v), o2 = occupancy_at(a2, v);
  if (!overlap(*o1, *o2))
    throw std::invalid_argument("classify: occupancies do not overlap");

  const Action* in;
  const Action* other;
  Role other_role;
  if (r1 == Role::In && r2 == Role::In) {
    in = a1.agent <= a2.agent ? &a1 : &a2;
    other = a1.agent <= a2.agent ? &a2 : &a1;
    other_role = Role::In;
  } else if (r1 == Role::In) {
    in = &a1; other = &a2; other_role = r2;
  } else if (r2 == Role::In) {
    in = &a2; other = &a1; other_role = r1;
  } else {
    // A non-IN pair is malformed here: full-path detection always finds an
    // earlier IN-involving conflict at the same vertex.
    throw std::invalid_argument("classify: neither action is an IN at vertex");
  }

  ConflictKind kind = other_role == Role::In    ? ConflictKind::InIn
                      : other_role == Role::Out ? ConflictKind::OutIn
                                                : ConflictKind::WaitIn;
  TimePoint t = infimum_of_intersection(*occupancy_at(*in, v),
                                        *occupancy_at(*other, v));
  return Conflict{*in, *other, v, kind, t};
}

std::optional<Conflict> detect_earliest_conflict(const Solution& s) {
  std::optional<Conflict> best;
  auto better = [&](const Conflict& c) {
    if (!best) return true;
    if (c.time != best->time) return c.time < best->time;
    if (c.action_i.agent != best->action_i.agent)
      return c.action_i.agent < best->action_i.agent;
    if (c.action_j.agent != best->action_j.agent)
      return c.action_j.agent < best->action_j.agent;
    return c.vertex < best->vertex;
  };
  for (size_t x = 0; x < s.size(); ++x) {
    for (size_t y = x + 1; y < s.size(); ++y) {
      for (const Action& a : s[x].actions) {
        for (const Action& b : s[y].actions) {
          int n_vs = a.is_move() ? 2 : 1;
          for (int k = 0; k < n_vs; ++k) {
            Vertex v = k == 0 ? a.from_vertex : a.to_vertex;
            Role ra = role_at(a, v), rb = role_at(b, v);
            if (rb == Role::None) continue;
            if (ra != Role::In && rb != Role::In) continue;
            auto oa = occupancy_at(a, v), ob = occupancy_at(b, v);
            if (!overlap(*oa, *ob)) continue;
            Conflict c = classify(a, b, v);
            if (better(c)) best = c;
          }
        }
      }
    }
  }
  return best;
}

int count_conflicting_pairs(const Solution& s) {
  int count = 0;
  for (size_t x = 0; x < s.size(); ++x) {
    for (size_t y = x + 1; y < s.size(); ++y) {
      bool hit = false;
      auto occ_x = merged_occupancy(s[x]);
      auto occ_y = merged_occupancy(s[y]);
      for (auto& [v, ia] : occ_x) {
        for (auto& [u, ib] : occ_y)
          if (v == u && overlap(ia, ib)) { hit = true; break; }
        if (hit) break;
      }
      if (hit) ++count;
    }
  }
  return count;
}

namespace {

void check_path(const Instance& inst, Agent i, const Path& p,
                ValidationReport& rep) {
  auto add = [&](std::string type, std::string msg, Vertex v = -1,
                 std::string t = "") {
    rep.violations.push_back({std::move(type), i, -1, v, std::move(t), std::move(msg)});
  };
  if (p.actions.empty()) {
    add("structure", "empty path");
    return;
  }
  if (p.actions.front().from_vertex != inst.start(i) ||
      !p.actions.front().start.is_zero())
    add("endpoint", "path does not begin at the start vertex at time 0",
        p.actions.front().from_vertex);
  const Action& last = p.actions.back();
  if (last.is_move() || !last.end.is_infinite() ||
      last.from_vertex != inst.goal(i))
    add("endpoint", "path does not end with an infinite wait at the goal",
        last.from_vertex);
  for (size_t k = 0; k < p.actions.size(); ++k) {
    const Action& a = p.actions[k];
    if (a.agent != i) add("structure", "action carries a foreign agent id");
    if (a.is_move()) {
      if (!inst.has_edge(a.from_vertex, a.to_vertex)) {
        add("structure", "move along a non-edge", a.from_vertex, a.start.str());
      } else if (a.end - a.start != inst.duration(i, a.from_vertex, a.to_vertex)) {
        add("duration", "move duration differs from the agent's edge duration",
            a.from_vertex, a.start.str());
      }
    } else {
      if (a.from_vertex != a.to_vertex)
        add("structure", "wait with distinct endpoints", a.from_vertex);
      if (!a.end.is_infinite() && a.end < a.start)
        add("duration", "wait ends before it starts", a.from_vertex, a.start.str());
    }
    if (k > 0) {
      const Action& prev = p.actions[k - 1];
      if (prev.to_vertex != a.from_vertex || prev.end != a.start)
        add("continuity", "action does not start where/when the previous ended",
            a.from_vertex, a.start.str());
    }
  }
  TimePoint c = p.actions.back().is_move() ? p.actions.back().end
                                           : p.actions.back().start;
  if (!last.is_move() && last.end.is_infinite() && p.cost != c)
    add("structure", "recorded cost differs from terminal wait start");
}

}  // namespace

ValidationReport validate(const Instance& inst, const Solution& s) {
  ValidationReport rep;
  if ((int)s.size() != inst.num_agents()) {
    rep.violations.push_back(
        {"structure", -1, -1, -1, "", "solution size differs from agent count"});
    return rep;
  }
  for (Agent i = 0; i < (int)s.size(); ++i) check_path(inst, i, s[i], rep);

  // All pairwise duration conflicts, on maximal merged occupancies.
  for (size_t x = 0; x < s.size(); ++x) {
    auto occ_x = merged_occupancy(s[x]);
    for (size_t y = x + 1; y < s.size(); ++y) {
      auto occ_y = merged_occupancy(s[y]);
      for (auto& [v, ia] : occ_x) {
        for (auto& [u, ib] : occ_y) {
          if (v != u || !overlap(ia, ib)) continue;
          rep.violations.push_back(
              {"conflict", (Agent)x, (Agent)y, v,
               infimum_of_intersection(ia, ib).str(),
               "agents co-occupy vertex over a non-empty interval"});
        }
      }
    }
  }
  return rep;
}

std::string ValidationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Violation& v : violations) {
    nlohmann::json rec{{"type", v.type}, {"message", v.message}};
    if (v.agent_a >= 0) rec["agent"] = v.agent_a;
    if (v.agent_b >= 0) rec["agent_other"] = v.agent_b;
    if (v.vertex >= 0) rec["vertex"] = v.vertex;
    if (!v.time.empty()) rec["time"] = v.time;
    arr.push_back(rec);
  }
  return nlohmann::json{{"valid", violations.empty()}, {"violations", arr}}.dump(2);
}

}  // namespace mapfaa
