#ifndef MAPFAA_SIPP_HPP
#define MAPFAA_SIPP_HPP

#include <chrono>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mapfaa/constraints.hpp"
#include "mapfaa/instance.hpp"

namespace mapfaa {

// A maximal window during which an agent may be present (waiting) at a
// vertex. hi_departable marks windows cut by an Occupancy point: the agent
// may still be present at exactly hi provided it departs right then (the
// out-move then ends strictly before the forbidden point).
struct SafeInterval {
  Interval ivl;
  bool hi_departable = false;
};

// Per-agent search-space tables derived from a constraint set: wait-safe
// windows per vertex, forbidden-start windows for wildcard IN/OUT motion
// constraints and per directed edge, and raw occupancy points (whose
// edge-width windows depend on the traversed edge and are applied at
// expansion time).
struct SafeIntervalTable {
  std::vector<std::vector<SafeInterval>> wait;        // per vertex, sorted
  std::vector<std::vector<Interval>> entry_windows;   // per vertex, on move starts
  std::vector<std::vector<Interval>> exit_windows;    // per vertex, on move starts
  std::unordered_map<long long, std::vector<Interval>> edge_windows;  // directed
  std::vector<std::vector<TimePoint>> oc_points;      // per vertex, sorted

  const std::vector<Interval>* edge(Vertex u, Vertex v, int n) const {
    auto it = edge_windows.find((long long)u * n + v);
    return it == edge_windows.end() ? nullptr : &it->second;
  }
};

SafeIntervalTable build_safe_intervals(Agent agent,
                                       const std::vector<Constraint>& constraints,
                                       const Instance& inst);

// Merged occupancy intervals of the other agents' current paths, used by
// SIPPS-WC as soft constraints.
struct SoftTable {
  std::vector<std::vector<Interval>> occ;  // per vertex
  bool empty() const { return occ.empty(); }
};

SoftTable build_soft_table(const Instance& inst, const Solution& paths, Agent skip);

// Exact minimum travel time to the agent's goal, per vertex, ignoring
// constraints. nullopt for vertices that cannot reach the goal.
std::vector<std::optional<TimePoint>> heuristic(const Instance& inst, Agent agent);

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

struct PlannerTimeout : std::runtime_error {
  PlannerTimeout() : std::runtime_error("low-level planner deadline exceeded") {}
};

// Minimum-cost single-agent plan under the constraint set; nullopt when no
// feasible path exists. Throws PlannerTimeout past the deadline.
std::optional<Path> sipp_plan(const Instance& inst, Agent agent,
                              const std::vector<Constraint>& constraints,
                              Deadline deadline = {});

// One generated search state, exposed so fixtures can inspect expansions:
// vertex, arrival time, upper end of the state's safe interval, and the
// count of soft intervals met while waiting out the interval (c_v^w).
struct ExpandedState {
  Vertex v;
  TimePoint arr;
  TimePoint ivl_hi;
  int cw;
};

// Same costs as sipp_plan; among minimum-cost paths prefers fewer soft
// conflicts, counting conflicts incurred while waiting inside a safe
// interval (the c_v^w term). When trace is given, every generated state is
// appended to it.
std::optional<Path> sipps_wc_plan(const Instance& inst, Agent agent,
                                  const std::vector<Constraint>& constraints,
                                  const SoftTable& soft, Deadline deadline = {},
                                  std::vector<ExpandedState>* trace = nullptr);

// Replays every constraint against every action of the path, including the
// implicit zero-duration waits between consecutive moves.
bool path_respects(const std::vector<Constraint>& cs, const Path& p);

}  // namespace mapfaa

#endif  // MAPFAA_SIPP_HPP
