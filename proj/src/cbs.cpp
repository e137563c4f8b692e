#include "mapfaa/cbs.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <queue>
#include <stdexcept>

#include "mapfaa/sipp.hpp"

namespace mapfaa {

Mode mode_from_string(const std::string& s) {
  if (s == "csa" || s == "CSA") return Mode::CSA;
  if (s == "cma" || s == "CMA") return Mode::CMA;
  if (s == "cmas" || s == "CMAS") return Mode::CMAS;
  throw std::invalid_argument("unknown mode: " + s);
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::CSA: return "csa";
    case Mode::CMA: return "cma";
    case Mode::CMAS: return "cmas";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Solved: return "solved";
    case Outcome::Unsolvable: return "unsolvable";
    case Outcome::TimedOut: return "timeout";
  }
  return "?";
}

namespace {

struct HLNode {
  std::vector<std::vector<Constraint>> constraints;  // per agent
  Solution paths;
  TimePoint soc;
  int conflict_pairs = 0;
  int depth = 0;
  long long seq = 0;
};

struct HLCompare {
  // true when a should be popped after b.
  bool operator()(const std::shared_ptr<HLNode>& a,
                  const std::shared_ptr<HLNode>& b) const {
    if (a->soc != b->soc) return b->soc < a->soc;
    if (a->conflict_pairs != b->conflict_pairs)
      return a->conflict_pairs > b->conflict_pairs;
    if (a->depth != b->depth) return a->depth < b->depth;  // deeper first
    return a->seq > b->seq;
  }
};

}  // namespace

SolveResult solve(const Instance& inst, Mode mode, const Budget& budget) {
  auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  Deadline deadline;
  if (budget.time_limit_s)
    deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(*budget.time_limit_s));
  auto out_of_time = [&] {
    return deadline && std::chrono::steady_clock::now() > *deadline;
  };
  auto finish = [&](Outcome o) -> SolveResult& {
    res.outcome = o;
    res.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
  };

  const int n = inst.num_agents();
  const bool soft_mode = mode == Mode::CMAS;
  VertexTiming vt = vertex_timing(inst);

  auto replan = [&](HLNode& node, Agent a) -> bool {
    ++res.stats.lowlevel_calls;
    std::optional<Path> p;
    if (soft_mode) {
      SoftTable soft = build_soft_table(inst, node.paths, a);
      p = sipps_wc_plan(inst, a, node.constraints[a], soft, deadline);
    } else {
      p = sipp_plan(inst, a, node.constraints[a], deadline);
    }
    if (!p) return false;
    node.paths[a] = std::move(*p);
    return true;
  };

  try {
    long long seq = 0;
    auto root = std::make_shared<HLNode>();
    root->constraints.resize(n);
    root->paths.resize(n);
    for (Agent a = 0; a < n; ++a)
      if (!replan(*root, a)) return finish(Outcome::Unsolvable);
    root->soc = sum_of_costs(root->paths);
    root->conflict_pairs = count_conflicting_pairs(root->paths);
    root->seq = seq++;

    std::priority_queue<std::shared_ptr<HLNode>, std::vector<std::shared_ptr<HLNode>>,
                        HLCompare>
        open;
    open.push(root);
    ++res.stats.generations;

    while (!open.empty()) {
      if (out_of_time()) return finish(Outcome::TimedOut);
      auto node = open.top();
      open.pop();
      auto conflict = detect_earliest_conflict(node->paths);
      if (!conflict) {
        res.solution = node->paths;
        res.soc = node->soc;
        return finish(Outcome::Solved);
      }
      if (budget.node_limit && res.stats.expansions >= *budget.node_limit)
        return finish(Outcome::TimedOut);
      ++res.stats.expansions;

      auto branches = (mode == Mode::CSA) ? gen_csa(*conflict)
                                          : gen_cma(*conflict, vt);
      for (const Branch* b : {&branches.first, &branches.second}) {
        auto child = std::make_shared<HLNode>(*node);
        child->constraints[b->agent].insert(child->constraints[b->agent].end(),
                                            b->constraints.begin(),
                                            b->constraints.end());
        child->depth = node->depth + 1;
        child->seq = seq++;
        if (!replan(*child, b->agent)) continue;
        child->soc = sum_of_costs(child->paths);
        child->conflict_pairs = count_conflicting_pairs(child->paths);
        open.push(child);
        ++res.stats.generations;
      }
    }
    return finish(Outcome::Unsolvable);
  } catch (const PlannerTimeout&) {
    return finish(Outcome::TimedOut);
  }
}

}  // namespace mapfaa
