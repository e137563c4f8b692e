#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "mapfaa/instance.hpp"

using namespace mapfaa;

namespace {
TimePoint tp(long long p, long long q = 1) { return TimePoint::ratio(p, q); }
}  // namespace

TEST_CASE("instance invariants are enforced") {
  CHECK_THROWS_AS(Instance(3, {{0, 1}}, {0, 0}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(3, {{0, 1}}, {0, 1}, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(2, {{0, 5}}, {0}, {1}), std::invalid_argument);
  Instance inst(3, {{0, 1}}, {0}, {2});
  inst.set_uniform_duration(0, tp(1));
  CHECK(inst.solvable_for(0) == false);  // vertex 2 disconnected
  CHECK_THROWS(inst.set_uniform_duration(0, tp(0)));
}

TEST_CASE("move occupancy is half-open source, half-open-left destination") {
  // move over [0, 2.3]: source [0, 2.3), destination (0, 2.3]
  Action m = Action::move(0, 0, 1, tp(0), tp(23, 10));
  auto occ = occupancy(m);
  REQUIRE(occ.size() == 2);
  CHECK(occ[0].first == 0);
  CHECK(occ[0].second.str() == "[0, 23/10)");
  CHECK(occ[1].first == 1);
  CHECK(occ[1].second.str() == "(0, 23/10]");
}

TEST_CASE("wait occupancy is closed; terminal wait is a ray") {
  CHECK(occupancy(Action::wait(0, 3, tp(0), tp(5)))[0].second.str() == "[0, 5]");
  CHECK(occupancy(Action::wait(0, 3, tp(2), tp(2)))[0].second.str() == "[2, 2]");
  CHECK(occupancy(Action::wait(0, 3, tp(0), TimePoint::infinity()))[0].second.str() ==
        "[0, inf)");
}

TEST_CASE("pass-through occupancy merges to an open interval") {
  // arrive at vertex 1 at 2.3, leave immediately, arrive 2 at 4.6
  Path p;
  p.actions = {Action::move(0, 0, 1, tp(0), tp(23, 10)),
               Action::move(0, 1, 2, tp(23, 10), tp(46, 10)),
               Action::wait(0, 2, tp(46, 10), TimePoint::infinity())};
  p.cost = tp(46, 10);
  auto merged = merged_occupancy(p);
  bool found = false;
  for (auto& [v, ivl] : merged)
    if (v == 1) {
      found = true;
      CHECK(ivl.str() == "(0, 23/5)");
    }
  CHECK(found);
}

TEST_CASE("path cost is the start of the terminal stay") {
  Path p;
  p.actions = {Action::move(0, 0, 1, tp(0), tp(1)), Action::move(0, 1, 2, tp(1), tp(2)),
               Action::move(0, 2, 3, tp(2), tp(3)),
               Action::wait(0, 3, tp(3), TimePoint::infinity())};
  CHECK(path_cost(p) == tp(3));

  Path q;
  q.actions = {Action::wait(0, 0, tp(0), tp(2)), Action::move(0, 0, 1, tp(2), tp(3)),
               Action::wait(0, 1, tp(3), TimePoint::infinity())};
  CHECK(path_cost(q) == tp(3));

  // speed 2 over 3 unit edges: 3 moves of duration 1/2
  Path r;
  r.actions = {Action::move(0, 0, 1, tp(0), tp(1, 2)),
               Action::move(0, 1, 2, tp(1, 2), tp(1)),
               Action::move(0, 2, 3, tp(1), tp(3, 2)),
               Action::wait(0, 3, tp(3, 2), TimePoint::infinity())};
  CHECK(path_cost(r) == tp(3, 2));
}

TEST_CASE("sum of costs") {
  Solution s(2);
  s[0].cost = tp(1);
  s[1].cost = tp(3, 2);
  CHECK(sum_of_costs(s) == tp(5, 2));
  Solution z(2);
  z[0].cost = tp(0);
  z[1].cost = tp(0);
  CHECK(sum_of_costs(z) == tp(0));
}

TEST_CASE("vertex timing takes minima over incident edges") {
  Instance inst(4, {{0, 1}, {1, 2}, {1, 3}}, {0}, {2});
  inst.set_edge_duration(0, 0, 1, tp(2));
  inst.set_edge_duration(0, 1, 2, tp(3));
  inst.set_edge_duration(0, 1, 3, tp(5));
  VertexTiming vt = vertex_timing(inst);
  CHECK(*vt.tau_in[0][1] == tp(2));
  CHECK(*vt.tau_out[0][1] == tp(2));
  CHECK(*vt.tau_in[0][2] == tp(3));

  Instance uni = fixtures::toy();
  VertexTiming tvt = vertex_timing(uni);
  for (Vertex v = 0; v < 5; ++v) {
    CHECK(*tvt.tau_in[1][v] == tp(2));
    CHECK(*tvt.tau_out[2][v] == tp(3));
  }

  Instance frac(4, {{0, 1}, {1, 2}, {1, 3}}, {0}, {2});
  frac.set_edge_duration(0, 0, 1, tp(1, 2));
  frac.set_edge_duration(0, 1, 2, tp(1, 3));
  frac.set_edge_duration(0, 1, 3, tp(1, 5));
  CHECK(*vertex_timing(frac).tau_in[0][1] == tp(1, 5));

  Instance iso(3, {{0, 1}}, {0}, {1});
  iso.set_uniform_duration(0, tp(1));
  CHECK_FALSE(vertex_timing(iso).tau_in[0][2].has_value());
}

TEST_CASE("consecutive occupancies of one path merge without gaps") {
  Solution s = fixtures::toy_root_plan();
  for (const Path& p : s) {
    auto merged = merged_occupancy(p);
    // each agent's merged intervals per vertex are disjoint and ordered
    for (size_t i = 0; i + 1 < merged.size(); ++i)
      if (merged[i].first == merged[i + 1].first)
        CHECK_FALSE(overlap(merged[i].second, merged[i + 1].second));
  }
  // splitting a wait leaves merged occupancy unchanged
  Path w;
  w.actions = {Action::wait(1, 3, tp(0), tp(4)),
               Action::wait(1, 3, tp(4), TimePoint::infinity())};
  w.cost = tp(4);
  auto m = merged_occupancy(w);
  REQUIRE(m.size() == 1);
  CHECK(m[0].second.str() == "[0, inf)");
}

TEST_CASE("degenerate start-equals-goal path has cost zero") {
  Path p;
  p.actions = {Action::wait(0, 3, tp(0), TimePoint::infinity())};
  CHECK(path_cost(p) == tp(0));
}
