#ifndef MAPFAA_IO_HPP
#define MAPFAA_IO_HPP

#include <string>

#include "mapfaa/cbs.hpp"
#include "mapfaa/instance.hpp"
#include "mapfaa/sipp.hpp"

namespace mapfaa {

// Solution JSON: per agent its start/goal, uniform edge duration, cost and
// action list. Times are exact rational strings; *_decimal fields carry a
// 6-digit decimal rendering for display only.
std::string solution_to_json(const Instance& inst, const Solution& s);

// Rebuilds the solution (and per-agent durations onto a fresh instance built
// from the same graph) from solution JSON. starts/goals/durations are taken
// from the JSON; the graph from `n_vertices`/`edges`.
struct LoadedSolution {
  Instance instance;
  Solution solution;
};
LoadedSolution solution_from_json(const std::string& text,
                                  int n_vertices,
                                  const std::vector<std::pair<Vertex, Vertex>>& edges);

std::string stats_to_json(const SolveResult& r);

// Debug dumps.
std::string constraints_to_json(const std::vector<Constraint>& cs);
std::string safe_intervals_to_json(const SafeIntervalTable& t);

}  // namespace mapfaa

#endif  // MAPFAA_IO_HPP
