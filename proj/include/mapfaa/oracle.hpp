#ifndef MAPFAA_ORACLE_HPP
#define MAPFAA_ORACLE_HPP

#include <optional>

#include "mapfaa/cbs.hpp"
#include "mapfaa/instance.hpp"

namespace mapfaa {

struct OracleResult {
  Outcome outcome = Outcome::TimedOut;
  Solution solution;
  std::optional<TimePoint> soc;
  long long expansions = 0;
  double wall_ms = 0;
};

// Provably optimal solver by exhaustive A* over joint states. Decisions are
// made on a 1/L time lattice, L the lcm of all duration denominators, which
// preserves optimality because some optimal solution has all event times on
// that lattice. Independent of the CBS machinery: no constraints, no safe
// intervals, only raw occupancy-overlap checks.
//
// horizon caps the decision times considered; when the search space is
// exhausted only because of that cap the result is TimedOut, otherwise an
// exhausted space means Unsolvable.
struct OracleBudget {
  std::optional<double> time_limit_s;
  std::optional<long long> expansion_limit;
  std::optional<TimePoint> horizon;
};

OracleResult oracle_solve(const Instance& inst, const OracleBudget& budget = {});

}  // namespace mapfaa

#endif  // MAPFAA_ORACLE_HPP
