#include "mapfaa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mapfaa {

std::vector<int> gen_speeds(int n, unsigned seed, int max_speed) {
  if (n < 1) throw std::invalid_argument("need at least one speed");
  std::mt19937 rng(seed);
  std::vector<int> speeds(n);
  for (int& s : speeds) s = 1 + (int)(rng() % (unsigned)max_speed);
  return speeds;
}

namespace {

std::string csv_wall(double ms, bool redact) {
  if (redact) return "0.000000";
  char buf[64];
  snprintf(buf, sizeof buf, "%.6f", ms);
  return buf;
}

}  // namespace

std::string records_to_csv(const std::vector<RunRecord>& records, bool redact_walltime) {
  std::ostringstream out;
  out << "map,N,mode,seed,outcome,soc,expansions,lowlevel_calls,wall_ms\n";
  for (const RunRecord& r : records)
    out << r.map << ',' << r.n_agents << ',' << r.mode << ',' << r.seed << ','
        << to_string(r.outcome) << ',' << (r.soc ? r.soc->str() : "") << ','
        << r.expansions << ',' << r.lowlevel_calls << ','
        << csv_wall(r.wall_ms, redact_walltime) << '\n';
  return out.str();
}

std::string summarize(const std::vector<RunRecord>& records) {
  // Common-solve filter: an (map, N, seed) instance counts toward expansion
  // statistics only when every requested mode solved it.
  std::map<std::tuple<std::string, int, unsigned>, int> solved_count;
  std::vector<std::string> modes;
  for (const RunRecord& r : records) {
    if (std::find(modes.begin(), modes.end(), r.mode) == modes.end())
      modes.push_back(r.mode);
    if (r.outcome == Outcome::Solved) solved_count[{r.map, r.n_agents, r.seed}]++;
  }
  const int n_modes = (int)modes.size();

  struct Agg {
    int runs = 0, solved = 0;
    long long min_e = 0, max_e = 0, sum_e = 0, common = 0;
  };
  std::map<std::tuple<std::string, int, std::string>, Agg> aggs;
  for (const RunRecord& r : records) {
    Agg& a = aggs[{r.map, r.n_agents, r.mode}];
    ++a.runs;
    if (r.outcome == Outcome::Solved) ++a.solved;
    if (solved_count[{r.map, r.n_agents, r.seed}] == n_modes) {
      if (a.common == 0 || r.expansions < a.min_e) a.min_e = r.expansions;
      if (a.common == 0 || r.expansions > a.max_e) a.max_e = r.expansions;
      a.sum_e += r.expansions;
      ++a.common;
    }
  }
  std::ostringstream out;
  out << "map,N,mode,runs,solved,success_rate,common_solved,min_expansions,avg_expansions,max_expansions\n";
  for (const auto& [key, a] : aggs) {
    auto [map, n, mode] = key;
    char rate[32];
    snprintf(rate, sizeof rate, "%.6f", a.runs ? (double)a.solved / a.runs : 0.0);
    out << map << ',' << n << ',' << mode << ',' << a.runs << ',' << a.solved << ','
        << rate << ',' << a.common << ',';
    if (a.common > 0) {
      char avg[32];
      snprintf(avg, sizeof avg, "%.6f", (double)a.sum_e / a.common);
      out << a.min_e << ',' << avg << ',' << a.max_e;
    } else {
      out << ",,";
    }
    out << '\n';
  }
  return out.str();
}

BenchOutput run_bench(const BenchConfig& cfg) {
  struct Job {
    const BenchInput* input;
    int n_agents;
    Mode mode;
    unsigned seed;
  };
  std::vector<Job> jobs;
  for (const BenchInput& in : cfg.inputs)
    for (int n : cfg.agent_counts)
      for (Mode m : cfg.modes)
        for (unsigned s = 0; s < (unsigned)cfg.seeds; ++s)
          jobs.push_back({&in, n, m, s});

  std::vector<RunRecord> records(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job& j = jobs[k];
      RunRecord rec;
      rec.map = j.input->map_name;
      rec.n_agents = j.n_agents;
      rec.mode = to_string(j.mode);
      rec.seed = j.seed;
      try {
        if ((int)j.input->tasks.size() < j.n_agents)
          throw std::runtime_error("scen has fewer tasks than agents");
        std::vector<Task> tasks(j.input->tasks.begin(),
                                j.input->tasks.begin() + j.n_agents);
        std::vector<int> speeds = gen_speeds(j.n_agents, j.seed, cfg.max_speed);
        Instance inst = grid_instance(j.input->map, tasks, speeds);
        Budget budget;
        budget.time_limit_s = cfg.time_limit_s;
        SolveResult r = solve(inst, j.mode, budget);
        rec.outcome = r.outcome;
        rec.soc = r.soc;
        rec.expansions = r.stats.expansions;
        rec.lowlevel_calls = r.stats.lowlevel_calls;
        rec.wall_ms = r.stats.wall_ms;
      } catch (const std::exception&) {
        // Per-run failures produce a timeout-style row; the sweep continues.
        rec.outcome = Outcome::TimedOut;
      }
      records[k] = std::move(rec);
    }
  };
  int n_threads = std::max(1, cfg.threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchOutput out;
  out.records = std::move(records);
  out.runs_csv = records_to_csv(out.records, cfg.redact_walltime);
  out.summary_csv = summarize(out.records);
  return out;
}

}  // namespace mapfaa
