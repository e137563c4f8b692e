#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "lattice_oracle.hpp"
#include "mapfaa/sipp.hpp"

using namespace mapfaa;
using namespace fixtures;

namespace {
TimePoint tp(long long p, long long q = 1) { return TimePoint::ratio(p, q); }
const TimePoint kInf = TimePoint::infinity();

// Straight line A - B - C with unit durations for agent 0.
Instance line3() {
  Instance inst(3, {{0, 1}, {1, 2}}, {0}, {2});
  inst.set_uniform_duration(0, tp(1));
  return inst;
}
}  // namespace

TEST_CASE("empty constraint set leaves one unbounded safe interval everywhere") {
  Instance inst = toy();
  for (Agent a = 0; a < inst.num_agents(); ++a) {
    SafeIntervalTable t = build_safe_intervals(a, {}, inst);
    for (int v = 0; v < inst.num_vertices(); ++v) {
      REQUIRE(t.wait[v].size() == 1);
      CHECK(t.wait[v][0].ivl == Interval::ray(tp(0)));
      CHECK_FALSE(t.wait[v][0].hi_departable);
    }
  }
}

TEST_CASE("occupancy point carves an edge-width hole out of the safe timeline") {
  Instance inst = line3();
  auto t = build_safe_intervals(0, {Constraint::occupancy(0, 1, tp(5))}, inst);
  REQUIRE(t.wait[1].size() == 2);
  CHECK(t.wait[1][0].ivl == Interval::half_open(tp(0), tp(4)));
  CHECK(t.wait[1][0].hi_departable);
  CHECK(t.wait[1][1].ivl == Interval::ray(tp(6)));
  REQUIRE(t.oc_points[1].size() == 1);
  CHECK(t.oc_points[1][0] == tp(5));
  // Untouched vertices keep the full ray.
  REQUIRE(t.wait[0].size() == 1);
  CHECK(t.wait[0][0].ivl == Interval::ray(tp(0)));
}

TEST_CASE("wait constraint splits the timeline at its exact endpoints") {
  Instance inst = line3();
  auto t = build_safe_intervals(0, {Constraint::wait(0, 1, tp(3, 2), tp(7))}, inst);
  REQUIRE(t.wait[1].size() == 2);
  CHECK(t.wait[1][0].ivl == Interval::half_open(tp(0), tp(3, 2)));
  CHECK_FALSE(t.wait[1][0].hi_departable);
  CHECK(t.wait[1][1].ivl == Interval::ray(tp(7)));

  // A cut starting at zero leaves only the tail.
  auto t2 = build_safe_intervals(0, {Constraint::wait(0, 1, tp(0), tp(4))}, inst);
  REQUIRE(t2.wait[1].size() == 1);
  CHECK(t2.wait[1][0].ivl == Interval::ray(tp(4)));

  // An unbounded cut leaves nothing at all.
  auto t3 = build_safe_intervals(0, {Constraint::wait(0, 1, tp(0), kInf)}, inst);
  CHECK(t3.wait[1].empty());
}

TEST_CASE("unconstrained plans cost the graph distance") {
  Instance inst = toy();
  auto p0 = sipp_plan(inst, 0, {});
  auto p1 = sipp_plan(inst, 1, {});
  auto p2 = sipp_plan(inst, 2, {});
  REQUIRE(p0);
  REQUIRE(p1);
  REQUIRE(p2);
  CHECK(p0->cost == tp(1));
  CHECK(p1->cost == tp(0));
  CHECK(p2->cost == tp(6));
  // Terminal action is the infinite goal wait.
  CHECK(p2->actions.back().to_vertex == A);
  CHECK(p2->actions.back().end == kInf);
}

TEST_CASE("motion window defers the departure to its upper end") {
  Instance inst = line3();
  std::vector<Constraint> cs{Constraint::motion(0, 0, 1, tp(0), tp(5))};
  auto p = sipp_plan(inst, 0, cs);
  REQUIRE(p);
  CHECK(p->cost == tp(7));
  REQUIRE(p->actions.size() == 4);
  CHECK(p->actions[0].kind == ActionKind::Wait);
  CHECK(p->actions[0].end == tp(5));
  CHECK(p->actions[1].start == tp(5));
  CHECK(path_respects(cs, *p));
}

TEST_CASE("wildcard inbound window delays the whole route") {
  Instance inst = toy();
  std::vector<Constraint> cs{Constraint::motion(2, -1, D, tp(0), tp(8))};
  auto p = sipp_plan(inst, 2, cs);
  REQUIRE(p);
  // The only route C -> D -> A may not start its first move before 8.
  CHECK(p->cost == tp(14));
  CHECK(path_respects(cs, *p));
  auto oracle = lattice::oracle_cost(inst, 2, cs, tp(100));
  REQUIRE(oracle);
  CHECK(*oracle == p->cost);
}

TEST_CASE("waiting-conflict expansion yields the two characteristic children") {
  // Two vertices joined by a unit edge; the agent's own timeline at the
  // start vertex is clipped to [0, 8.29) by a wait constraint, and two
  // foreign occupancies sit on the target vertex.
  Instance inst(2, {{0, 1}}, {0}, {1});
  inst.set_uniform_duration(0, tp(1));
  std::vector<Constraint> cs{Constraint::wait(0, 0, tp(829, 100), tp(2000))};
  SoftTable soft;
  soft.occ.resize(2);
  soft.occ[1] = {Interval::make(tp(1, 2), tp(637, 100), false, false),
                 Interval::make(tp(7), tp(9), false, false)};
  std::vector<ExpandedState> trace;
  auto p = sipps_wc_plan(inst, 0, cs, soft, {}, &trace);
  REQUIRE(p);
  CHECK(p->cost == tp(1));

  bool depart_now = false, wait_then_depart = false;
  for (const ExpandedState& s : trace) {
    if (s.v != 1) continue;
    if (s.arr == tp(1) && s.ivl_hi.is_infinite() && s.cw == 2) depart_now = true;
    if (s.arr == tp(637, 100) && s.ivl_hi.is_infinite() && s.cw == 1)
      wait_then_depart = true;
  }
  CHECK(depart_now);
  CHECK(wait_then_depart);
}

TEST_CASE("soft occupancies steer the tie-break at equal cost") {
  // Diamond S - {X, Y} - G with unit edges; X is soft-occupied throughout.
  Instance inst(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {0}, {3});
  inst.set_uniform_duration(0, tp(1));
  SoftTable soft;
  soft.occ.resize(4);
  soft.occ[1] = {Interval::make(tp(0), tp(10), false, true)};

  auto hard = sipp_plan(inst, 0, {});
  SoftTable empty;
  empty.occ.resize(4);
  std::vector<ExpandedState> trace;
  auto soft_plan = sipps_wc_plan(inst, 0, {}, soft);
  auto neutral = sipps_wc_plan(inst, 0, {}, empty);
  REQUIRE(hard);
  REQUIRE(soft_plan);
  REQUIRE(neutral);
  CHECK(hard->cost == tp(2));
  CHECK(soft_plan->cost == tp(2));
  CHECK(neutral->cost == tp(2));
  // The soft-aware plan slips through Y (vertex 2).
  CHECK(soft_plan->actions[0].to_vertex == 2);
  // Without soft pressure both planners pick the same route.
  CHECK(neutral->actions[0].to_vertex == hard->actions[0].to_vertex);
}

TEST_CASE("heuristic is the exact constraint-free travel time") {
  Instance inst = toy();
  auto h2 = heuristic(inst, 2);  // goal A, durations 3
  REQUIRE(h2[C]);
  CHECK(*h2[C] == tp(6));
  REQUIRE(h2[D]);
  CHECK(*h2[D] == tp(3));
  CHECK(*h2[A] == tp(0));

  Instance gap(3, {{0, 1}}, {0}, {0});
  gap.set_uniform_duration(0, tp(1));
  auto h = heuristic(gap, 0);
  CHECK(*h[0] == tp(0));
  CHECK(*h[1] == tp(1));
  CHECK_FALSE(h[2]);
}

TEST_CASE("constraint replay accepts planner output and rejects tampering") {
  Instance inst = line3();
  std::vector<Constraint> cs{Constraint::motion(0, 0, 1, tp(0), tp(2)),
                             Constraint::wait(0, 1, tp(3), tp(4)),
                             Constraint::occupancy(0, 2, tp(2))};
  auto p = sipp_plan(inst, 0, cs);
  REQUIRE(p);
  CHECK(path_respects(cs, *p));
  auto oracle = lattice::oracle_cost(inst, 0, cs, tp(50));
  REQUIRE(oracle);
  CHECK(*oracle == p->cost);

  // Departing immediately breaks the motion constraint, including through
  // the implicit zero-length wait replay.
  Path bad;
  bad.actions = {Action::move(0, 0, 1, tp(0), tp(1)),
                 Action::move(0, 1, 2, tp(1), tp(2)),
                 Action::wait(0, 2, tp(2), kInf)};
  bad.cost = tp(2);
  CHECK_FALSE(path_respects(cs, bad));
}

TEST_CASE("over-constrained problems are reported as unsolvable, not mis-planned") {
  Instance inst = line3();
  // The start vertex is never waitable and the first move is forbidden
  // forever: no plan can exist.
  std::vector<Constraint> cs{Constraint::wait(0, 0, tp(0), kInf),
                             Constraint::motion(0, 0, 1, tp(0), kInf)};
  CHECK_FALSE(sipp_plan(inst, 0, cs));
  CHECK_FALSE(lattice::oracle_cost(inst, 0, cs, tp(60)));
}

TEST_CASE("random constraint sets: planner cost matches the event-lattice oracle") {
  std::mt19937 rng(20240817);
  auto rnd = [&](int m) { return (int)(rng() % m); };
  auto rnd_time = [&]() { return tp(rnd(41), 1 + rnd(3)); };  // 0 .. ~40/1

  int checked = 0;
  for (int iter = 0; iter < 220; ++iter) {
    // 3x3 grid with a random blocked cell (never start/goal).
    int blocked = rnd(9);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 3; ++x) {
        int v = y * 3 + x;
        if (v == blocked) continue;
        if (x + 1 < 3 && v + 1 != blocked) edges.push_back({v, v + 1});
        if (y + 1 < 3 && v + 3 != blocked) edges.push_back({v, v + 3});
      }
    int s = rnd(9), g = rnd(9);
    if (s == blocked || g == blocked || s == g) continue;
    Instance inst(9, edges, {s}, {g});
    TimePoint tau = tp(1, 1 + rnd(3));
    inst.set_uniform_duration(0, tau);
    if (!inst.solvable_for(0)) continue;

    std::vector<Constraint> cs;
    int k = rnd(7);
    for (int c = 0; c < k; ++c) {
      TimePoint lo = rnd_time();
      TimePoint hi = lo + tp(1 + rnd(12), 1 + rnd(2));
      switch (rnd(4)) {
        case 0: {
          auto [u, v] = edges[rnd((int)edges.size())];
          if (rnd(2)) std::swap(u, v);
          cs.push_back(Constraint::motion(0, u, v, lo, hi));
          break;
        }
        case 1: {
          int side = rnd(2);
          Vertex v = rnd(9);
          cs.push_back(side ? Constraint::motion(0, -1, v, lo, hi)
                            : Constraint::motion(0, v, -1, lo, hi));
          break;
        }
        case 2:
          cs.push_back(Constraint::wait(0, rnd(9), lo, hi));
          break;
        default:
          cs.push_back(Constraint::occupancy(0, rnd(9), lo));
          break;
      }
    }

    auto p = sipp_plan(inst, 0, cs);
    TimePoint horizon = tp(41) + tau.mul_int(12) + tp(5);
    if (p) {
      TimePoint h2 = p->cost + tp(1);
      if (horizon < h2) horizon = h2;
    }
    auto oracle = lattice::oracle_cost(inst, 0, cs, horizon);
    ++checked;
    if (p) {
      REQUIRE(oracle);
      CHECK(*oracle == p->cost);
      CHECK(path_respects(cs, *p));
      CHECK(p->actions.front().from_vertex == s);
      CHECK(p->actions.back().to_vertex == g);
      // Soft-aware planning never changes the optimal cost.
      SoftTable soft;
      soft.occ.resize(9);
      for (int j = 0; j < 3; ++j) {
        TimePoint a = rnd_time();
        soft.occ[rnd(9)].push_back(Interval::make(a, a + tp(1 + rnd(5)), false, true));
      }
      for (auto& vec : soft.occ)
        std::sort(vec.begin(), vec.end(),
                  [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
      auto pw = sipps_wc_plan(inst, 0, cs, soft);
      REQUIRE(pw);
      CHECK(pw->cost == p->cost);
      CHECK(path_respects(cs, *pw));
    } else {
      CHECK_FALSE(oracle);
    }
  }
  CHECK(checked >= 150);
}
