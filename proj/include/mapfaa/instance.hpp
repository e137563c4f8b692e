#ifndef MAPFAA_INSTANCE_HPP
#define MAPFAA_INSTANCE_HPP

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mapfaa/time.hpp"

namespace mapfaa {

using Vertex = int;
using Agent = int;

// MAPF-AA problem instance: undirected graph, per-agent symmetric edge
// durations, one start and one goal vertex per agent. Immutable after
// construction; shared freely across workers.
class Instance {
 public:
  Instance(int n_vertices, std::vector<std::pair<Vertex, Vertex>> edges,
           std::vector<Vertex> starts, std::vector<Vertex> goals);

  // Sets the same traversal duration for every edge of one agent
  // (the benchmark's 1/speed model).
  void set_uniform_duration(Agent i, TimePoint tau);
  // Per-edge override, applied symmetrically.
  void set_edge_duration(Agent i, Vertex u, Vertex v, TimePoint tau);

  int num_vertices() const { return n_vertices_; }
  int num_agents() const { return (int)starts_.size(); }
  Vertex start(Agent i) const { return starts_.at(i); }
  Vertex goal(Agent i) const { return goals_.at(i); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  bool has_edge(Vertex u, Vertex v) const;

  TimePoint duration(Agent i, Vertex u, Vertex v) const;
  std::optional<TimePoint> uniform_duration(Agent i) const { return uniform_.at(i); }

  // Start/goal connectivity per agent, checked at load time.
  bool solvable_for(Agent i) const { return reachable_.at(i); }

  // Checks start/goal distinctness and vertex-range invariants; called by
  // the constructor, throws std::invalid_argument on violation.
  void check() const;

  // Optional display names (e.g. "A".."E" or grid cells).
  std::vector<std::string> vertex_names;

 private:
  void finalize();

  int n_vertices_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Vertex> starts_, goals_;
  std::vector<std::optional<TimePoint>> uniform_;
  std::vector<std::unordered_map<long long, TimePoint>> edge_dur_;
  std::vector<bool> reachable_;
};

enum class ActionKind { Move, Wait };

// A timed state transition. Moves have end - start == tau exactly; waits
// have from == to and may have an infinite end (the terminal goal stay).
struct Action {
  Agent agent;
  Vertex from_vertex;
  Vertex to_vertex;
  TimePoint start;
  TimePoint end;
  ActionKind kind;

  static Action move(Agent a, Vertex u, Vertex v, TimePoint t1, TimePoint t2) {
    return Action{a, u, v, t1, t2, ActionKind::Move};
  }
  static Action wait(Agent a, Vertex v, TimePoint t1, TimePoint t2) {
    return Action{a, v, v, t1, t2, ActionKind::Wait};
  }
  bool is_move() const { return kind == ActionKind::Move; }
};

// Duration occupancy of a single action (Duration Occupancy model):
//   move (u,t1)->(v,t2):  u over [t1, t2), v over (t1, t2]
//   wait at v:            v over [t1, t2]  (point [t1,t1] if zero-length)
std::vector<std::pair<Vertex, Interval>> occupancy(const Action& a);

// Occupancy of one action restricted to one vertex, if any.
std::optional<Interval> occupancy_at(const Action& a, Vertex v);

// Path: actions chained in time and space, starting at (start, 0) and
// ending with an infinite wait at the goal. cost == that wait's start.
struct Path {
  std::vector<Action> actions;
  TimePoint cost;
};

using Solution = std::vector<Path>;

TimePoint path_cost(const Path& p);
TimePoint sum_of_costs(const Solution& s);

// Merged maximal occupancy intervals of one path, sorted by (vertex, lo).
std::vector<std::pair<Vertex, Interval>> merged_occupancy(const Path& p);

// Minimum in/out traversal times per (agent, vertex); empty optional at
// isolated vertices.
struct VertexTiming {
  std::vector<std::vector<std::optional<TimePoint>>> tau_in;   // [agent][vertex]
  std::vector<std::vector<std::optional<TimePoint>>> tau_out;
};

VertexTiming vertex_timing(const Instance& inst);

}  // namespace mapfaa

#endif  // MAPFAA_INSTANCE_HPP
