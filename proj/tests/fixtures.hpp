#ifndef MAPFAA_TESTS_FIXTURES_HPP
#define MAPFAA_TESTS_FIXTURES_HPP

#include "mapfaa/instance.hpp"

namespace fixtures {

using namespace mapfaa;

// Five-vertex toy: A=0, B=1, C=2, D=3, E=4; edges C-D, D-E, E-B, D-A.
// Agent 0: E -> B, uniform duration 1.
// Agent 1: D -> D, uniform duration 2.
// Agent 2: C -> A, uniform duration 3.
inline constexpr Vertex A = 0, B = 1, C = 2, D = 3, E = 4;

inline Instance toy() {
  Instance inst(5, {{C, D}, {D, E}, {E, B}, {D, A}}, {E, D, C}, {B, D, A});
  inst.set_uniform_duration(0, TimePoint::from_int(1));
  inst.set_uniform_duration(1, TimePoint::from_int(2));
  inst.set_uniform_duration(2, TimePoint::from_int(3));
  inst.vertex_names = {"A", "B", "C", "D", "E"};
  return inst;
}

// The unconstrained individually-optimal joint plan for the toy instance.
inline Solution toy_root_plan() {
  TimePoint t0 = TimePoint::from_int(0), inf = TimePoint::infinity();
  Solution s(3);
  s[0].actions = {Action::move(0, E, B, t0, TimePoint::from_int(1)),
                  Action::wait(0, B, TimePoint::from_int(1), inf)};
  s[0].cost = TimePoint::from_int(1);
  s[1].actions = {Action::wait(1, D, t0, inf)};
  s[1].cost = t0;
  s[2].actions = {Action::move(2, C, D, t0, TimePoint::from_int(3)),
                  Action::move(2, D, A, TimePoint::from_int(3), TimePoint::from_int(6)),
                  Action::wait(2, A, TimePoint::from_int(6), inf)};
  s[2].cost = TimePoint::from_int(6);
  return s;
}

}  // namespace fixtures

#endif
