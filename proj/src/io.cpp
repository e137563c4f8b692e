#include "mapfaa/io.hpp"

#include <json.hpp>

namespace mapfaa {

using nlohmann::json;

std::string solution_to_json(const Instance& inst, const Solution& s) {
  json out;
  out["n_agents"] = (int)s.size();
  json agents = json::array();
  TimePoint soc = TimePoint::from_int(0);
  for (Agent a = 0; a < (int)s.size(); ++a) {
    json ja;
    ja["start"] = inst.start(a);
    ja["goal"] = inst.goal(a);
    if (auto d = inst.uniform_duration(a)) ja["duration"] = d->str();
    ja["cost"] = s[a].cost.str();
    ja["cost_decimal"] = s[a].cost.decimal();
    json acts = json::array();
    for (const Action& act : s[a].actions)
      acts.push_back({{"kind", act.is_move() ? "move" : "wait"},
                      {"from", act.from_vertex},
                      {"to", act.to_vertex},
                      {"start", act.start.str()},
                      {"end", act.end.str()}});
    ja["actions"] = std::move(acts);
    agents.push_back(std::move(ja));
    soc = soc + s[a].cost;
  }
  out["agents"] = std::move(agents);
  out["soc"] = soc.str();
  out["soc_decimal"] = soc.decimal();
  return out.dump(2);
}

LoadedSolution solution_from_json(const std::string& text, int n_vertices,
                                  const std::vector<std::pair<Vertex, Vertex>>& edges) {
  json in = json::parse(text);
  std::vector<Vertex> starts, goals;
  for (const json& ja : in.at("agents")) {
    starts.push_back(ja.at("start").get<Vertex>());
    goals.push_back(ja.at("goal").get<Vertex>());
  }
  Instance inst(n_vertices, edges, starts, goals);
  Solution sol;
  Agent a = 0;
  for (const json& ja : in.at("agents")) {
    if (ja.contains("duration"))
      inst.set_uniform_duration(a, TimePoint::parse(ja.at("duration").get<std::string>()));
    Path p;
    p.cost = TimePoint::parse(ja.at("cost").get<std::string>());
    for (const json& jact : ja.at("actions")) {
      TimePoint t1 = TimePoint::parse(jact.at("start").get<std::string>());
      TimePoint t2 = TimePoint::parse(jact.at("end").get<std::string>());
      Vertex u = jact.at("from").get<Vertex>(), v = jact.at("to").get<Vertex>();
      p.actions.push_back(jact.at("kind") == "move" ? Action::move(a, u, v, t1, t2)
                                                    : Action::wait(a, u, t1, t2));
    }
    sol.push_back(std::move(p));
    ++a;
  }
  return LoadedSolution{std::move(inst), std::move(sol)};
}

std::string stats_to_json(const SolveResult& r) {
  json out;
  out["expansions"] = r.stats.expansions;
  out["generations"] = r.stats.generations;
  out["lowlevel_calls"] = r.stats.lowlevel_calls;
  out["wall_ms"] = r.stats.wall_ms;
  out["outcome"] = to_string(r.outcome);
  if (r.soc) {
    out["soc"] = r.soc->str();
    out["soc_decimal"] = r.soc->decimal();
  } else {
    out["soc"] = nullptr;
  }
  return out.dump(2);
}

std::string constraints_to_json(const std::vector<Constraint>& cs) {
  json out = json::array();
  for (const Constraint& c : cs) {
    json jc;
    jc["agent"] = c.agent;
    jc["kind"] = c.kind == ConstraintKind::Motion ? "motion"
                 : c.kind == ConstraintKind::Wait ? "wait"
                                                  : "occupancy";
    if (c.from >= 0) jc["from"] = c.from;
    if (c.to >= 0) jc["to"] = c.to;
    if (c.vertex >= 0) jc["vertex"] = c.vertex;
    jc["lo"] = c.lo.str();
    if (c.kind != ConstraintKind::Occupancy) jc["hi"] = c.hi.str();
    out.push_back(std::move(jc));
  }
  return out.dump(2);
}

std::string safe_intervals_to_json(const SafeIntervalTable& t) {
  json out;
  json wait = json::array();
  for (const auto& vec : t.wait) {
    json jv = json::array();
    for (const SafeInterval& si : vec)
      jv.push_back({{"interval", si.ivl.str()}, {"hi_departable", si.hi_departable}});
    wait.push_back(std::move(jv));
  }
  out["wait"] = std::move(wait);
  json oc = json::array();
  for (const auto& pts : t.oc_points) {
    json jv = json::array();
    for (const TimePoint& p : pts) jv.push_back(p.str());
    oc.push_back(std::move(jv));
  }
  out["occupancy_points"] = std::move(oc);
  return out.dump(2);
}

}  // namespace mapfaa
