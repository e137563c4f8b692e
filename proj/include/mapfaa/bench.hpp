#ifndef MAPFAA_BENCH_HPP
#define MAPFAA_BENCH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mapfaa/cbs.hpp"
#include "mapfaa/movingai.hpp"

namespace mapfaa {

// Deterministic per-seed speed draw, uniform over {1..20}.
std::vector<int> gen_speeds(int n, unsigned seed, int max_speed = 20);

struct RunRecord {
  std::string map;
  int n_agents;
  std::string mode;
  unsigned seed;
  Outcome outcome;
  std::optional<TimePoint> soc;
  long long expansions = 0;
  long long lowlevel_calls = 0;
  double wall_ms = 0;
};

struct BenchInput {
  std::string map_name;
  GridMap map;
  std::vector<Task> tasks;  // full scen list; first N used per run
};

struct BenchConfig {
  std::vector<BenchInput> inputs;
  std::vector<int> agent_counts;
  std::vector<Mode> modes;
  int seeds = 1;             // seeds 0..seeds-1
  std::optional<double> time_limit_s;
  int threads = 1;
  int max_speed = 20;
  bool redact_walltime = false;  // zero wall_ms for byte-stable CSV output
};

struct BenchOutput {
  std::vector<RunRecord> records;  // ordered by (map, N, mode, seed)
  std::string runs_csv;
  std::string summary_csv;
};

BenchOutput run_bench(const BenchConfig& cfg);

std::string records_to_csv(const std::vector<RunRecord>& records, bool redact_walltime);
std::string summarize(const std::vector<RunRecord>& records);

}  // namespace mapfaa

#endif  // MAPFAA_BENCH_HPP
