#include "mapfaa/constraints.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mapfaa {

std::string Constraint::str() const {
  auto vtx = [](Vertex v) { return v < 0 ? std::string("*") : std::to_string(v); };
  switch (kind) {
    case ConstraintKind::Motion:
      return "MC(" + std::to_string(agent) + ", " + vtx(from) + "->" + vtx(to) +
             ", [" + lo.str() + ", " + hi.str() + "))";
    case ConstraintKind::Wait:
      return "WC(" + std::to_string(agent) + ", " + std::to_string(vertex) +
             ", [" + lo.str() + ", " + hi.str() + "))";
    default:
      return "OC(" + std::to_string(agent) + ", " + std::to_string(vertex) +
             ", " + lo.str() + ")";
  }
}

bool violates(const Constraint& c, const Action& a) {
  if (c.agent != a.agent) return false;
  switch (c.kind) {
    case ConstraintKind::Motion: {
      if (!a.is_move()) return false;
      if (c.from >= 0 && c.from != a.from_vertex) return false;
      if (c.to >= 0 && c.to != a.to_vertex) return false;
      return a.start >= c.lo && a.start < c.hi;
    }
    case ConstraintKind::Wait: {
      if (a.is_move() || a.from_vertex != c.vertex) return false;
      if (c.lo >= c.hi) return false;
      auto occ = occupancy_at(a, c.vertex);
      return overlap(*occ, Interval::half_open(c.lo, c.hi));
    }
    case ConstraintKind::Occupancy: {
      auto occ = occupancy_at(a, c.vertex);
      return occ && occ->contains(c.lo);
    }
  }
  return false;
}

std::pair<Branch, Branch> gen_csa(const Conflict& c) {
  Agent i = c.action_i.agent, j = c.action_j.agent;
  if (c.kind == ConflictKind::WaitIn) {
    TimePoint t_r = min(c.action_i.end, c.action_j.end);
    return {Branch{i, {Constraint::occupancy(i, c.vertex, t_r)}},
            Branch{j, {Constraint::occupancy(j, c.vertex, t_r)}}};
  }
  // IN-IN and OUT-IN: forbid each specific move while the other occupies v.
  Constraint ci = Constraint::motion(i, c.action_i.from_vertex,
                                     c.action_i.to_vertex, c.action_i.start,
                                     c.action_j.end);
  Constraint cj = Constraint::motion(j, c.action_j.from_vertex,
                                     c.action_j.to_vertex, c.action_j.start,
                                     c.action_i.end);
  return {Branch{i, {ci}}, Branch{j, {cj}}};
}

namespace {

bool branch_valid(const Branch& b) {
  for (const Constraint& c : b.constraints) {
    if (c.kind == ConstraintKind::Occupancy) continue;
    if (!(c.lo < c.hi)) return false;
  }
  return true;
}

}  // namespace

std::pair<Branch, Branch> gen_cma(const Conflict& c, const VertexTiming& vt) {
  Agent i = c.action_i.agent, j = c.action_j.agent;
  Vertex v = c.vertex;
  auto need = [&](const std::optional<TimePoint>& t) -> TimePoint {
    if (!t) throw std::invalid_argument("gen_cma: vertex timing undefined at conflict vertex");
    return *t;
  };
  TimePoint in_i = need(vt.tau_in[i][v]), out_i = need(vt.tau_out[i][v]);
  TimePoint in_j = need(vt.tau_in[j][v]), out_j = need(vt.tau_out[j][v]);
  TimePoint t1_i = c.action_i.start;
  TimePoint t1_j = c.action_j.start, t2_j = c.action_j.end;

  Branch bi{i, {}}, bj{j, {}};
  switch (c.kind) {
    case ConflictKind::InIn:
      bi.constraints = {Constraint::motion(i, -1, v, t1_i, t1_j + in_j + out_j)};
      bj.constraints = {Constraint::motion(j, -1, v, t1_j, t1_i + in_i + out_i)};
      break;
    case ConflictKind::OutIn: {
      bi.constraints = {Constraint::motion(i, -1, v, t1_i, t1_j + out_j)};
      TimePoint r = t1_i + in_i + out_i + in_j;
      bj.constraints = {Constraint::wait(j, v, t1_j, r),
                        Constraint::motion(j, v, -1, t1_j, r)};
      break;
    }
    case ConflictKind::WaitIn: {
      TimePoint r_j = t1_i + in_i + out_i + in_j;
      if (t2_j < r_j) {
        bi.constraints = {Constraint::motion(i, -1, v, t1_i, t2_j + out_j)};
        bj.constraints = {Constraint::wait(j, v, t2_j, r_j)};
      } else {
        // Long wait: constrain its first short segment; later iterations
        // walk the remainder back to case 1.
        bi.constraints = {
            Constraint::motion(i, -1, v, t1_i, t1_i + in_i + out_i + out_j)};
        bj.constraints = {Constraint::wait(j, v, t1_i + in_i + out_i, r_j)};
      }
      break;
    }
  }
  // On non-uniform graphs a range may come out empty; fall back to the CSA
  // constraints for that branch (always valid and MD).
  if (!branch_valid(bi) || !branch_valid(bj)) {
    auto csa = gen_csa(c);
    if (!branch_valid(bi)) bi = csa.first;
    if (!branch_valid(bj)) bj = csa.second;
  }
  return {bi, bj};
}

SubdividedInstance subdivide_edges(const Instance& inst) {
  int na = inst.num_agents();
  // Per-agent minimum edge duration.
  std::vector<TimePoint> tmin(na);
  for (Agent i = 0; i < na; ++i) {
    bool first = true;
    for (auto& [u, v] : inst.edges()) {
      TimePoint d = inst.duration(i, u, v);
      if (first || d < tmin[i]) { tmin[i] = d; first = false; }
    }
    if (first) throw std::invalid_argument("subdivide_edges: instance has no edges");
  }
  // Edge length pattern: integer multiplier, identical across agents.
  std::vector<long long> mult;
  for (auto& [u, v] : inst.edges()) {
    long long m = -1;
    for (Agent i = 0; i < na; ++i) {
      TimePoint d = inst.duration(i, u, v);
      // d / tmin = (d.num * tmin.den) / (d.den * tmin.num) must be integer.
      __int128 p = (__int128)d.num() * tmin[i].den();
      __int128 q = (__int128)d.den() * tmin[i].num();
      if (p % q != 0)
        throw std::invalid_argument(
            "subdivide_edges: edge duration is not an integer multiple of the "
            "agent's minimum duration");
      long long mi = (long long)(p / q);
      if (m == -1) m = mi;
      else if (m != mi)
        throw std::invalid_argument(
            "subdivide_edges: edge length pattern differs between agents");
    }
    mult.push_back(m);
  }

  int n = inst.num_vertices();
  std::vector<Vertex> origin(n);
  for (Vertex v = 0; v < n; ++v) origin[v] = v;
  std::vector<std::pair<Vertex, Vertex>> new_edges;
  int next = n;
  for (size_t e = 0; e < inst.edges().size(); ++e) {
    auto [u, v] = inst.edges()[e];
    Vertex prev = u;
    for (long long k = 1; k < mult[e]; ++k) {
      origin.push_back(-1);
      new_edges.emplace_back(prev, next);
      prev = next++;
    }
    new_edges.emplace_back(prev, v);
  }

  std::vector<Vertex> starts, goals;
  for (Agent i = 0; i < na; ++i) {
    starts.push_back(inst.start(i));
    goals.push_back(inst.goal(i));
  }
  Instance out(next, new_edges, starts, goals);
  for (Agent i = 0; i < na; ++i) out.set_uniform_duration(i, tmin[i]);
  out.vertex_names = inst.vertex_names;
  out.vertex_names.resize(next);
  return SubdividedInstance{std::move(out), std::move(origin)};
}

namespace {

// A candidate transit of one agent through the conflict vertex, expressed
// as concrete actions so branch violation and pairwise conflicts can be
// replayed exactly.
struct Placement {
  std::vector<Action> actions;
};

struct Side {
  Agent agent;
  Vertex in_nb;   // neighbor used for the IN move
  Vertex out_nb;  // neighbor used for the OUT move
  TimePoint tin, tout;
};

void add_placements(std::vector<Placement>& out, const Side& s, Vertex v,
                    const std::vector<TimePoint>& xs,
                    const std::vector<TimePoint>& ws) {
  for (const TimePoint& x : xs) {
    // Transit: IN at x, wait w, OUT.
    for (const TimePoint& w : ws) {
      Placement p;
      TimePoint arr = x + s.tin;
      p.actions.push_back(Action::move(s.agent, s.in_nb, v, x, arr));
      p.actions.push_back(Action::wait(s.agent, v, arr, arr + w));
      p.actions.push_back(
          Action::move(s.agent, v, s.out_nb, arr + w, arr + w + s.tout));
      out.push_back(std::move(p));
    }
    // Enter and stay forever.
    {
      Placement p;
      TimePoint arr = x + s.tin;
      p.actions.push_back(Action::move(s.agent, s.in_nb, v, x, arr));
      p.actions.push_back(Action::wait(s.agent, v, arr, TimePoint::infinity()));
      out.push_back(std::move(p));
    }
    // At v since time 0 (its start): wait until x, then leave. An agent
    // waiting at v at any later time must have entered via an IN move, so
    // mid-timeline waits without arrival occupancy are not legal placements.
    {
      Placement p;
      p.actions.push_back(Action::wait(s.agent, v, TimePoint::from_int(0), x));
      p.actions.push_back(Action::move(s.agent, v, s.out_nb, x, x + s.tout));
      out.push_back(std::move(p));
    }
  }
  // At v since time 0 and staying forever.
  {
    Placement p;
    p.actions.push_back(
        Action::wait(s.agent, v, TimePoint::from_int(0), TimePoint::infinity()));
    out.push_back(std::move(p));
  }
}

bool placement_violates(const Placement& p, const Branch& b) {
  for (const Constraint& c : b.constraints)
    for (const Action& a : p.actions)
      if (violates(c, a)) return true;
  return false;
}

bool placements_conflict(const Placement& a, const Placement& b) {
  for (const Action& x : a.actions)
    for (const Action& y : b.actions)
      for (auto& [v, iv] : occupancy(x)) {
        auto ov = occupancy_at(y, v);
        if (ov && overlap(iv, *ov)) return true;
      }
  return false;
}

}  // namespace

bool is_mutually_disjunctive(const Branch& bi, const Branch& bj,
                             const Conflict& c, const VertexTiming& vt) {
  Vertex v = c.vertex;
  Agent i = c.action_i.agent, j = c.action_j.agent;
  Side side_i{i, c.action_i.from_vertex, c.action_i.from_vertex,
              *vt.tau_in[i][v], *vt.tau_out[i][v]};
  Vertex jn;
  switch (c.kind) {
    case ConflictKind::InIn: jn = c.action_j.from_vertex; break;
    case ConflictKind::OutIn: jn = c.action_j.to_vertex; break;
    default: jn = 1000000 + j; break;  // synthetic label; wildcards only
  }
  Side side_j{j, jn, jn, *vt.tau_in[j][v], *vt.tau_out[j][v]};

  // Critical instants: every constraint endpoint and conflict time.
  std::set<TimePoint> crit{TimePoint::from_int(0), c.action_i.start,
                           c.action_i.end, c.action_j.start};
  if (!c.action_j.end.is_infinite()) crit.insert(c.action_j.end);
  for (const Branch* b : {&bi, &bj})
    for (const Constraint& k : b->constraints) {
      crit.insert(k.lo);
      if (!k.hi.is_infinite()) crit.insert(k.hi);
    }
  // Smallest positive gap among critical points and traversal times.
  TimePoint gap = side_i.tin;
  for (const TimePoint& t :
       {side_i.tout, side_j.tin, side_j.tout})
    gap = min(gap, t);
  TimePoint prev, horizon;
  bool have_prev = false;
  for (const TimePoint& t : crit) {
    if (have_prev && t > prev) gap = min(gap, t - prev);
    prev = t;
    have_prev = true;
    horizon = t;
  }
  TimePoint half = gap.div_int(2);
  horizon = horizon + side_i.tin + side_i.tout + side_j.tin + side_j.tout;

  std::vector<TimePoint> xs;
  std::set<TimePoint> xset;
  for (const TimePoint& b : crit)
    for (int k = -10; k <= 10; ++k) {
      TimePoint off = half.mul_int(k < 0 ? -k : k);
      if (k < 0 && b < off) continue;
      TimePoint x = k < 0 ? b - off : b + off;
      if (x <= horizon) xset.insert(x);
    }
  xs.assign(xset.begin(), xset.end());
  std::vector<TimePoint> ws{TimePoint::from_int(0), half, gap, gap + half,
                            gap.mul_int(2), gap.mul_int(4)};

  std::vector<Placement> pi, pj;
  add_placements(pi, side_i, v, xs, ws);
  add_placements(pj, side_j, v, xs, ws);

  std::vector<const Placement*> vi, vj;
  for (const Placement& p : pi)
    if (placement_violates(p, bi)) vi.push_back(&p);
  for (const Placement& p : pj)
    if (placement_violates(p, bj)) vj.push_back(&p);

  for (const Placement* a : vi)
    for (const Placement* b : vj)
      if (!placements_conflict(*a, *b)) return false;
  return true;
}

}  // namespace mapfaa
