#ifndef MAPFAA_CBS_HPP
#define MAPFAA_CBS_HPP

#include <optional>
#include <string>

#include "mapfaa/conflict.hpp"
#include "mapfaa/constraints.hpp"
#include "mapfaa/instance.hpp"

namespace mapfaa {

// Branching rule used by the high-level search. CSA splits on single-action
// constraints; CMA on multi-action constraints; CMAS additionally replans
// with soft collision avoidance against the other agents' current paths.
enum class Mode { CSA, CMA, CMAS };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);

enum class Outcome { Solved, Unsolvable, TimedOut };
std::string to_string(Outcome o);

struct Budget {
  std::optional<double> time_limit_s;
  std::optional<long long> node_limit;  // cap on high-level expansions
};

struct Stats {
  long long expansions = 0;
  long long generations = 0;
  long long lowlevel_calls = 0;
  double wall_ms = 0;
};

struct SolveResult {
  Outcome outcome = Outcome::TimedOut;
  Solution solution;               // valid only when Solved
  std::optional<TimePoint> soc;    // sum of costs when Solved
  Stats stats;
};

SolveResult solve(const Instance& inst, Mode mode, const Budget& budget = {});

}  // namespace mapfaa

#endif  // MAPFAA_CBS_HPP
