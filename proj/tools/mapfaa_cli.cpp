#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mapfaa/bench.hpp"
#include "mapfaa/cbs.hpp"
#include "mapfaa/conflict.hpp"
#include "mapfaa/io.hpp"
#include "mapfaa/movingai.hpp"
#include "mapfaa/oracle.hpp"

namespace {

bool log_debug() {
  const char* v = std::getenv("MAPFAA_LOG");
  return v && std::string(v) == "debug";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct SolveArgs {
  std::string map_file, scen_file, algo = "csa", out_file, stats_file, speeds_file;
  int agents = 1;
  unsigned speeds_seed = 0;
  double time_limit = 0;  // 0 = unlimited
  bool subdivide = false;
};

void add_solve_options(CLI::App* cmd, SolveArgs& a, bool fixed_oracle) {
  cmd->add_option("--map", a.map_file, "MovingAI .map file")->required();
  cmd->add_option("--scen", a.scen_file, "MovingAI .scen file")->required();
  cmd->add_option("--agents", a.agents, "number of agents (first N scen rows)")
      ->required();
  cmd->add_option("--speeds-seed", a.speeds_seed, "seed for the speed draw");
  cmd->add_option("--speeds", a.speeds_file,
                  "file with one integer speed per agent (overrides the seed)");
  if (!fixed_oracle)
    cmd->add_option("--algo", a.algo, "csa|cma|cmas|oracle");
  cmd->add_option("--time-limit", a.time_limit, "time limit in seconds (0 = none)");
  cmd->add_flag("--subdivide", a.subdivide, "subdivide edges before solving");
  cmd->add_option("--out", a.out_file, "write solution JSON here");
  cmd->add_option("--stats", a.stats_file, "write stats JSON here");
}

int run_solve(const SolveArgs& a) {
  using namespace mapfaa;
  GridMap map = parse_map(read_file(a.map_file));
  std::vector<Task> tasks = parse_scen(read_file(a.scen_file), map);
  if ((int)tasks.size() < a.agents)
    throw std::runtime_error("scen has fewer tasks than --agents");
  tasks.resize(a.agents);
  std::vector<int> speeds;
  if (!a.speeds_file.empty()) {
    std::istringstream ss(read_file(a.speeds_file));
    int s;
    while (ss >> s) speeds.push_back(s);
    if ((int)speeds.size() != a.agents)
      throw std::runtime_error("--speeds file must list one speed per agent");
  } else {
    speeds = gen_speeds(a.agents, a.speeds_seed);
  }
  Instance inst = grid_instance(map, tasks, speeds);
  if (a.subdivide) {
    SubdividedInstance sub = subdivide_edges(inst);
    inst = std::move(sub.instance);
  }
  if (log_debug())
    std::cerr << "instance: " << inst.num_vertices() << " vertices, "
              << inst.edges().size() << " edges, " << inst.num_agents()
              << " agents\n";

  SolveResult result;
  if (a.algo == "oracle") {
    OracleBudget ob;
    if (a.time_limit > 0) ob.time_limit_s = a.time_limit;
    OracleResult r = oracle_solve(inst, ob);
    result.outcome = r.outcome;
    result.solution = std::move(r.solution);
    result.soc = r.soc;
    result.stats.expansions = r.expansions;
    result.stats.wall_ms = r.wall_ms;
  } else {
    Budget budget;
    if (a.time_limit > 0) budget.time_limit_s = a.time_limit;
    result = solve(inst, mode_from_string(a.algo), budget);
  }

  std::string stats = stats_to_json(result);
  std::cout << stats << "\n";
  if (!a.stats_file.empty()) write_file(a.stats_file, stats);
  if (result.outcome == Outcome::Solved && !a.out_file.empty())
    write_file(a.out_file, solution_to_json(inst, result.solution));
  return result.outcome == Outcome::Solved ? 0 : 1;
}

int run_validate(const std::string& map_file, const std::string& solution_file) {
  using namespace mapfaa;
  GridMap map = parse_map(read_file(map_file));
  LoadedSolution loaded =
      solution_from_json(read_file(solution_file), map.num_vertices, map.edges);
  ValidationReport report = validate(loaded.instance, loaded.solution);
  std::cout << report.to_json() << "\n";
  return report.ok() ? 0 : 1;
}

int run_bench_cmd(const std::vector<std::string>& map_files,
                  const std::vector<int>& agents, const std::vector<std::string>& algos,
                  int seeds, double time_limit, int threads, const std::string& out_file,
                  const std::string& summary_file) {
  using namespace mapfaa;
  BenchConfig cfg;
  for (const std::string& mf : map_files) {
    BenchInput in;
    in.map_name = mf.substr(mf.find_last_of('/') + 1);
    if (in.map_name.size() > 4 && in.map_name.substr(in.map_name.size() - 4) == ".map")
      in.map_name.resize(in.map_name.size() - 4);
    in.map = parse_map(read_file(mf));
    in.tasks = parse_scen(read_file(mf + ".scen"), in.map);
    cfg.inputs.push_back(std::move(in));
  }
  cfg.agent_counts = agents;
  for (const std::string& s : algos) cfg.modes.push_back(mode_from_string(s));
  cfg.seeds = seeds;
  if (time_limit > 0) cfg.time_limit_s = time_limit;
  cfg.threads = threads;
  BenchOutput out = run_bench(cfg);
  write_file(out_file, out.runs_csv);
  if (!summary_file.empty()) write_file(summary_file, out.summary_csv);
  std::cout << out.summary_csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent path finding with asynchronous actions"};
  app.require_subcommand(1);

  SolveArgs sa, oa;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
  add_solve_options(solve_cmd, sa, false);
  auto* oracle_cmd =
      app.add_subcommand("oracle", "solve one instance with the exhaustive oracle");
  add_solve_options(oracle_cmd, oa, true);
  oa.algo = "oracle";

  std::string v_map, v_solution;
  auto* validate_cmd = app.add_subcommand("validate", "validate a solution JSON");
  validate_cmd->add_option("--map", v_map, "MovingAI .map file")->required();
  validate_cmd->add_option("--solution", v_solution, "solution JSON")->required();

  std::vector<std::string> b_maps, b_algos;
  std::vector<int> b_agents;
  int b_seeds = 1, b_threads = 1;
  double b_time_limit = 30;
  std::string b_out = "runs.csv", b_summary;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark sweep");
  bench_cmd->add_option("--maps", b_maps, "map files (scen expected at <map>.scen)")
      ->required();
  bench_cmd->add_option("--agents", b_agents, "agent counts")->required();
  bench_cmd->add_option("--algos", b_algos, "modes to run")->required();
  bench_cmd->add_option("--seeds", b_seeds, "number of seeds (0..K-1)");
  bench_cmd->add_option("--time-limit", b_time_limit, "per-run limit in seconds");
  bench_cmd->add_option("--threads", b_threads, "worker pool size");
  bench_cmd->add_option("--out", b_out, "runs CSV path");
  bench_cmd->add_option("--summary", b_summary, "summary CSV path");

  CLI11_PARSE(app, argc, argv);
  try {
    if (solve_cmd->parsed()) return run_solve(sa);
    if (oracle_cmd->parsed()) return run_solve(oa);
    if (validate_cmd->parsed()) return run_validate(v_map, v_solution);
    if (bench_cmd->parsed())
      return run_bench_cmd(b_maps, b_agents, b_algos, b_seeds, b_time_limit, b_threads,
                           b_out, b_summary);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
