#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "mapfaa/bench.hpp"
#include "mapfaa/movingai.hpp"

using namespace mapfaa;

namespace {
std::string map_text(int w, int h, const std::vector<std::string>& rows) {
  std::string t = "type octile\nheight " + std::to_string(h) + "\nwidth " +
                  std::to_string(w) + "\nmap\n";
  for (const auto& r : rows) t += r + "\n";
  return t;
}

std::string empty_map(int w, int h) {
  return map_text(w, h, std::vector<std::string>(h, std::string(w, '.')));
}
}  // namespace

TEST_CASE("map parsing counts vertices and 4-connected edges") {
  GridMap m = parse_map(empty_map(2, 2));
  CHECK(m.width == 2);
  CHECK(m.height == 2);
  CHECK(m.num_vertices == 4);
  CHECK(m.edges.size() == 4);

  GridMap gap = parse_map(map_text(3, 1, {".@."}));
  CHECK(gap.num_vertices == 2);
  CHECK(gap.edges.empty());
  CHECK(gap.vertex(1, 0) == -1);
  CHECK(gap.is_passable(0, 0));
  CHECK_FALSE(gap.is_passable(1, 0));
  CHECK_FALSE(gap.is_passable(3, 0));  // out of bounds

  GridMap big = parse_map(empty_map(32, 32));
  CHECK(big.num_vertices == 1024);
  CHECK(big.edges.size() == 1984);

  // Alternate glyphs: G passable, O/T blocked.
  GridMap alt = parse_map(map_text(3, 1, {"GOT"}));
  CHECK(alt.num_vertices == 1);
}

TEST_CASE("map parsing reports malformed input with a position") {
  CHECK_THROWS_AS(parse_map(map_text(3, 2, {"...", ".."})), ParseError);
  CHECK_THROWS_AS(parse_map(map_text(2, 1, {".X"})), ParseError);
  CHECK_THROWS_AS(parse_map("height 2\nwidth 2\nmap\n..\n..\n"), ParseError);
  try {
    parse_map(map_text(2, 1, {".X"}));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 5);
    CHECK(e.column == 2);
  }
}

TEST_CASE("map round trip is lossless") {
  GridMap m = parse_map(map_text(4, 3, {"..@.", "@...", "...@"}));
  GridMap again = parse_map(serialize_map(m));
  CHECK(again.width == m.width);
  CHECK(again.height == m.height);
  CHECK(again.passable == m.passable);
  CHECK(again.edges == m.edges);
}

TEST_CASE("scen parsing and round trip") {
  GridMap m = parse_map(empty_map(4, 4));
  std::string scen =
      "version 1\n"
      "0\tname.map\t4\t4\t0\t0\t3\t3\t6\n"
      "0\tname.map\t4\t4\t3\t0\t0\t3\t6\n"
      "0\tname.map\t4\t4\t1\t1\t1\t1\t0\n";  // zero-length task allowed
  std::vector<Task> tasks = parse_scen(scen, m);
  REQUIRE(tasks.size() == 3);
  CHECK(tasks[0].sx == 0);
  CHECK(tasks[0].gy == 3);
  CHECK(tasks[2].sx == tasks[2].gx);

  // The version header is optional.
  CHECK(parse_scen("0\tm\t4\t4\t0\t0\t1\t1\t2\n", m).size() == 1);

  std::vector<Task> again = parse_scen(serialize_scen(tasks, m, "name.map"), m);
  REQUIRE(again.size() == tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) {
    CHECK(again[i].sx == tasks[i].sx);
    CHECK(again[i].sy == tasks[i].sy);
    CHECK(again[i].gx == tasks[i].gx);
    CHECK(again[i].gy == tasks[i].gy);
  }
}

TEST_CASE("scen parsing rejects mismatches and bad cells") {
  GridMap m = parse_map(empty_map(4, 4));
  // Declared dimensions disagree with the map.
  CHECK_THROWS_AS(parse_scen("0\tm\t8\t8\t0\t0\t1\t1\t2\n", m), ParseError);
  // Out of bounds.
  CHECK_THROWS_AS(parse_scen("0\tm\t4\t4\t0\t0\t9\t0\t9\n", m), ParseError);
  // Blocked cell.
  GridMap g = parse_map(map_text(2, 1, {".@"}));
  CHECK_THROWS_AS(parse_scen("0\tm\t2\t1\t0\t0\t1\t0\t1\n", g), ParseError);
  // Truncated row.
  CHECK_THROWS_AS(parse_scen("0\tm\t4\t4\t0\t0\n", m), ParseError);
}

TEST_CASE("grid instances carry speeds as uniform durations") {
  GridMap m = parse_map(empty_map(3, 3));
  std::vector<Task> tasks{{0, 0, 2, 2}, {2, 0, 0, 2}};
  Instance inst = grid_instance(m, tasks, {1, 2});
  CHECK(inst.num_agents() == 2);
  CHECK(inst.uniform_duration(0) == TimePoint::from_int(1));
  CHECK(inst.uniform_duration(1) == TimePoint::ratio(1, 2));
  CHECK_THROWS(grid_instance(m, tasks, {0, 2}));
  CHECK_THROWS(grid_instance(m, tasks, {1, 21}));
  CHECK_THROWS(grid_instance(m, tasks, {1}));
}

TEST_CASE("speed draws are deterministic, in range, and exercised fully") {
  std::vector<int> a = gen_speeds(50, 7);
  std::vector<int> b = gen_speeds(50, 7);
  CHECK(a == b);
  CHECK(gen_speeds(50, 8) != a);
  for (int s : a) {
    CHECK(s >= 1);
    CHECK(s <= 20);
  }
  std::map<int, int> hist;
  for (int s : gen_speeds(3000, 11, 3)) ++hist[s];
  REQUIRE(hist.size() == 3);
  for (auto [v, c] : hist) CHECK(c > 800);  // roughly uniform thirds
  CHECK_THROWS(gen_speeds(0, 1));
}

TEST_CASE("benchmark sweep: shape, determinism, and cross-mode agreement") {
  BenchInput in;
  in.map_name = "tiny";
  in.map = parse_map(empty_map(4, 4));
  in.tasks = {{0, 0, 3, 3}, {3, 0, 0, 3}, {0, 3, 3, 0}, {3, 3, 0, 0}};

  BenchConfig cfg;
  cfg.inputs = {in};
  cfg.agent_counts = {2, 3};
  cfg.modes = {Mode::CSA, Mode::CMA, Mode::CMAS};
  cfg.seeds = 2;
  cfg.time_limit_s = 10.0;
  cfg.threads = 2;
  cfg.max_speed = 3;
  cfg.redact_walltime = true;

  BenchOutput out = run_bench(cfg);
  REQUIRE(out.records.size() == 12);
  CHECK(out.runs_csv.rfind("map,N,mode,seed,outcome,soc,expansions,lowlevel_calls,wall_ms\n",
                           0) == 0);
  // Line count: header + one row per run.
  CHECK(std::count(out.runs_csv.begin(), out.runs_csv.end(), '\n') == 13);

  // Same (N, seed) instances solved by different modes agree on cost.
  std::map<std::pair<int, unsigned>, TimePoint> cost;
  for (const RunRecord& r : out.records) {
    CHECK(r.map == "tiny");
    if (r.outcome != Outcome::Solved) continue;
    REQUIRE(r.soc);
    auto key = std::make_pair(r.n_agents, r.seed);
    auto it = cost.find(key);
    if (it == cost.end())
      cost.emplace(key, *r.soc);
    else
      CHECK(it->second == *r.soc);
  }
  CHECK(!cost.empty());

  // Byte-stable across repeats with redacted wall time.
  BenchOutput again = run_bench(cfg);
  CHECK(again.runs_csv == out.runs_csv);
  CHECK(again.summary_csv == out.summary_csv);

  // Summary covers every (map, N, mode) group.
  CHECK(std::count(out.summary_csv.begin(), out.summary_csv.end(), '\n') == 7);
  CHECK(out.summary_csv.find("tiny,2,csa,") != std::string::npos);
  CHECK(out.summary_csv.find("tiny,3,cmas,") != std::string::npos);
}
