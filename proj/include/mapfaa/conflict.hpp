#ifndef MAPFAA_CONFLICT_HPP
#define MAPFAA_CONFLICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "mapfaa/instance.hpp"

namespace mapfaa {

enum class ConflictKind { InIn, OutIn, WaitIn };

// A classified duration conflict. action_i is always the IN side: a move
// whose destination is the conflict vertex.
struct Conflict {
  Action action_i;
  Action action_j;
  Vertex vertex;
  ConflictKind kind;
  TimePoint time;  // infimum of the occupancy intersection at vertex
};

// Classify two overlapping actions at v; the IN-performing action becomes
// the i side. Throws if neither action is an IN at v.
Conflict classify(const Action& a1, const Action& a2, Vertex v);

// Globally earliest conflict over all agent pairs, or nullopt when the
// solution is conflict-free. Ties break by (agent i, agent j, vertex).
std::optional<Conflict> detect_earliest_conflict(const Solution& s);

// Number of unordered agent pairs currently in conflict (CBS tie-break).
int count_conflicting_pairs(const Solution& s);

struct Violation {
  std::string type;  // "conflict", "continuity", "duration", "endpoint", "structure"
  Agent agent_a = -1;
  Agent agent_b = -1;
  Vertex vertex = -1;
  std::string time;  // exact rational string, empty if n/a
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_json() const;
};

// Independent checker: structural path validity (continuity, durations,
// start/goal, terminal wait) plus every pairwise duration conflict.
ValidationReport validate(const Instance& inst, const Solution& s);

}  // namespace mapfaa

#endif  // MAPFAA_CONFLICT_HPP
