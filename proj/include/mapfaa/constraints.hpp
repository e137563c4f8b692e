#ifndef MAPFAA_CONSTRAINTS_HPP
#define MAPFAA_CONSTRAINTS_HPP

#include <string>
#include <vector>

#include "mapfaa/conflict.hpp"
#include "mapfaa/instance.hpp"

namespace mapfaa {

enum class ConstraintKind { Motion, Wait, Occupancy };

// The three constraint kinds the low-level planner must respect:
//   Motion(from, to, [l, r)):  forbids move actions matching from/to whose
//     start lies in [l, r); either endpoint may be the wildcard (-1), on at
//     most one side.
//   Wait(v, [l, r)):  forbids wait actions at v whose occupancy intersects
//     the range.
//   Occupancy(v, t):  forbids any action whose occupancy of v contains t.
struct Constraint {
  Agent agent;
  ConstraintKind kind;
  Vertex from = -1;   // Motion only; -1 = wildcard
  Vertex to = -1;     // Motion only; -1 = wildcard
  Vertex vertex = -1; // Wait/Occupancy
  TimePoint lo;       // range start, or the Occupancy point
  TimePoint hi;       // range end (exclusive); unused for Occupancy

  static Constraint motion(Agent a, Vertex from, Vertex to, TimePoint l, TimePoint r) {
    return Constraint{a, ConstraintKind::Motion, from, to, -1, l, r};
  }
  static Constraint wait(Agent a, Vertex v, TimePoint l, TimePoint r) {
    return Constraint{a, ConstraintKind::Wait, -1, -1, v, l, r};
  }
  static Constraint occupancy(Agent a, Vertex v, TimePoint t) {
    return Constraint{a, ConstraintKind::Occupancy, -1, -1, v, t, t};
  }

  bool operator==(const Constraint& o) const {
    return agent == o.agent && kind == o.kind && from == o.from && to == o.to &&
           vertex == o.vertex && lo == o.lo && hi == o.hi;
  }

  std::string str() const;
};

// One branch of a high-level split: a non-empty constraint set, all for
// one agent.
struct Branch {
  Agent agent;
  std::vector<Constraint> constraints;
};

// True iff the action transgresses the constraint (per-action replay).
bool violates(const Constraint& c, const Action& a);

// Constraints on Single Action: targets the specific conflicting actions.
std::pair<Branch, Branch> gen_csa(const Conflict& c);

// Constraints on Multiple Actions: propagates over all IN/OUT/WAIT actions
// at the conflict vertex using minimum traversal times. A branch whose
// generated range would be empty (r <= l, possible on non-uniform graphs) falls
// back to that agent's CSA constraints, so no invalid interval ever leaves.
std::pair<Branch, Branch> gen_cma(const Conflict& c, const VertexTiming& vt);

// Inserts intermediate vertices into longer edges so that every edge has a
// per-agent uniform duration. The returned mapping gives,
// for each new vertex, the original vertex id or -1 for inserted ones.
struct SubdividedInstance {
  Instance instance;
  std::vector<Vertex> origin;  // new vertex -> original vertex or -1
};
SubdividedInstance subdivide_edges(const Instance& inst);

// Test utility for mutual disjunction: brute-force search over a dense grid of candidate
// transit placements for a pair of conflict-free placements violating both
// branches simultaneously. Returns true when none exists.
bool is_mutually_disjunctive(const Branch& bi, const Branch& bj,
                             const Conflict& c, const VertexTiming& vt);

}  // namespace mapfaa

#endif  // MAPFAA_CONSTRAINTS_HPP
