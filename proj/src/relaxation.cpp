#include "gcover/relaxation.hpp"

#include <algorithm>
#include <string>

#include "gcover/errors.hpp"

namespace gcover {

namespace {

using lp::LinearExpr;
using lp::Relation;

std::string edge_name(const Graph& g, int e) {
  return std::to_string(g.edge(e).u) + "_" + std::to_string(g.edge(e).v);
}

// Shared body of the natural and strengthened relaxations.
Relaxation build_covering(const Graph& g, const std::vector<Rational>& nw,
                          const std::vector<Rational>& ew,
                          const std::vector<ExtRat>& penalty,
                          std::vector<std::vector<int>> demands,
                          RelaxationKind kind) {
  if (kind == RelaxationKind::kEdgeCover) {
    throw UsageError("edge-cover relaxation needs an edge cover instance");
  }
  Relaxation r;
  lp::LpModel& m = r.model;
  LinearExpr objective;
  for (int e = 0; e < g.num_edges(); ++e) {
    r.x_edge.push_back(m.add_variable("x_e" + edge_name(g, e)));
    if (sgn(ew[e]) != 0) objective.push_back({r.x_edge[e], ew[e]});
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    r.x_node.push_back(m.add_variable("x_v" + std::to_string(v)));
    if (sgn(nw[v]) != 0) objective.push_back({r.x_node[v], nw[v]});
  }
  const bool strengthened = kind == RelaxationKind::kStrengthened;
  for (std::size_t c = 0; c < demands.size(); ++c) {
    const std::string tag = std::to_string(c);
    int z = -1;
    if (penalty[c].is_finite()) {
      z = m.add_variable("z" + tag);
      if (sgn(penalty[c].finite()) != 0) {
        objective.push_back({z, penalty[c].finite()});
      }
    }
    r.z.push_back(z);
    std::vector<int> ys;
    if (strengthened) {
      for (int e : demands[c]) {
        ys.push_back(m.add_variable("y" + tag + "_e" + edge_name(g, e)));
      }
    }
    r.y.push_back(std::move(ys));
  }
  m.set_objective(lp::Sense::kMinimize, objective);

  for (std::size_t c = 0; c < demands.size(); ++c) {
    const std::vector<int>& cs = demands[c];
    LinearExpr cover;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      cover.push_back({strengthened ? r.y[c][k] : r.x_edge[cs[k]], 1});
    }
    if (r.z[c] >= 0) cover.push_back({r.z[c], 1});
    m.add_constraint(std::move(cover), Relation::kGreaterEqual, 1);
    if (!strengthened) continue;
    // x(v) >= sum of y(C, e) over the edges of C at v.
    std::vector<int> ends;
    for (int e : cs) {
      ends.push_back(g.edge(e).u);
      ends.push_back(g.edge(e).v);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    for (int v : ends) {
      LinearExpr row{{r.x_node[v], 1}};
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (g.edge(cs[k]).has(v)) row.push_back({r.y[c][k], -1});
      }
      m.add_constraint(std::move(row), Relation::kGreaterEqual, 0);
    }
    for (std::size_t k = 0; k < cs.size(); ++k) {
      m.add_constraint({{r.x_edge[cs[k]], 1}, {r.y[c][k], -1}},
                       Relation::kGreaterEqual, 0);
    }
  }
  if (!strengthened) {
    for (int e = 0; e < g.num_edges(); ++e) {
      for (int v : {g.edge(e).u, g.edge(e).v}) {
        m.add_constraint({{r.x_node[v], 1}, {r.x_edge[e], -1}},
                         Relation::kGreaterEqual, 0);
      }
    }
  }
  r.demand_sets = std::move(demands);
  return r;
}

}  // namespace

const char* to_string(RelaxationKind kind) {
  switch (kind) {
    case RelaxationKind::kNatural: return "natural";
    case RelaxationKind::kStrengthened: return "strengthened";
    case RelaxationKind::kEdgeCover: return "edge-cover";
  }
  return "?";
}

RelaxationKind parse_relaxation_kind(const std::string& name) {
  if (name == "natural") return RelaxationKind::kNatural;
  if (name == "strengthened") return RelaxationKind::kStrengthened;
  if (name == "edge-cover") return RelaxationKind::kEdgeCover;
  throw UsageError("unknown relaxation '" + name + "'");
}

std::vector<std::vector<int>> eds_demand_sets(const Graph& g) {
  std::vector<std::vector<int>> out;
  for (int e = 0; e < g.num_edges(); ++e) out.push_back(g.edge_neighbourhood(e));
  return out;
}

std::vector<std::vector<int>> multicut_demand_sets(
    const MulticutInstance& inst) {
  const RootedTree t = inst.tree();
  std::vector<std::vector<int>> out;
  for (const Demand& d : inst.demands) {
    std::vector<int> p = t.path_edges(d.s, d.t);
    std::sort(p.begin(), p.end());
    out.push_back(std::move(p));
  }
  return out;
}

Relaxation build_relaxation(const EdsInstance& inst, RelaxationKind kind) {
  validate(inst);
  return build_covering(inst.graph, inst.node_weight, inst.edge_weight,
                        inst.penalty, eds_demand_sets(inst.graph), kind);
}

Relaxation build_relaxation(const MulticutInstance& inst, RelaxationKind kind) {
  validate(inst);
  std::vector<ExtRat> pen;
  for (const Demand& d : inst.demands) pen.push_back(d.penalty);
  return build_covering(inst.graph, inst.node_weight, inst.edge_weight, pen,
                        multicut_demand_sets(inst), kind);
}

Relaxation build_relaxation(const EdgeCoverInstance& inst, RelaxationKind kind) {
  if (kind != RelaxationKind::kEdgeCover) {
    throw UsageError("edge cover instances only support the edge-cover relaxation");
  }
  const Graph& g = inst.graph;
  Relaxation r;
  lp::LpModel& m = r.model;
  LinearExpr objective;
  for (int e = 0; e < g.num_edges(); ++e) {
    r.x_edge.push_back(m.add_variable("x_e" + edge_name(g, e)));
    if (sgn(inst.edge_weight[e]) != 0) {
      objective.push_back({r.x_edge[e], inst.edge_weight[e]});
    }
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    r.x_node.push_back(m.add_variable("x_v" + std::to_string(v)));
    if (sgn(inst.node_weight[v]) != 0) {
      objective.push_back({r.x_node[v], inst.node_weight[v]});
    }
  }
  m.set_objective(lp::Sense::kMinimize, objective);
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (!inst.demand[v]) continue;
    LinearExpr row;
    for (int e : g.incident(v)) row.push_back({r.x_edge[e], 1});
    m.add_constraint(std::move(row), Relation::kGreaterEqual, 1);
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    for (int v : {g.edge(e).u, g.edge(e).v}) {
      m.add_constraint({{r.x_node[v], 1}, {r.x_edge[e], -1}},
                       Relation::kGreaterEqual, 0);
    }
  }
  return r;
}

namespace {

// End nodes of the edges in N, ascending.
std::vector<int> end_nodes(const Graph& g, const std::vector<int>& edges) {
  std::vector<int> out;
  for (int e : edges) {
    out.push_back(g.edge(e).u);
    out.push_back(g.edge(e).v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_xi(const EdsInstance& inst, const std::vector<Rational>& xi) {
  if (static_cast<int>(xi.size()) != inst.graph.num_edges()) {
    throw UsageError("certificate size does not match the edge count");
  }
  for (std::size_t e = 0; e < xi.size(); ++e) {
    if (sgn(xi[e]) < 0) throw UsageError("negative dual value");
    if (ExtRat(xi[e]) > inst.penalty[e]) {
      throw UsageError("dual value of edge " + std::to_string(e) +
                       " exceeds its penalty");
    }
  }
}

}  // namespace

std::optional<EdsDualCompletion> complete_eds_dual(
    const EdsInstance& inst, const std::vector<Rational>& xi) {
  validate(inst);
  check_xi(inst, xi);
  const Graph& g = inst.graph;
  lp::LpModel m;
  std::map<std::pair<int, int>, int> nu_var;  // (e', e)
  std::map<std::pair<int, int>, int> mu_var;  // (v, e)
  std::vector<LinearExpr> edge_cap(g.num_edges());
  std::vector<LinearExpr> node_cap(g.num_nodes());
  std::vector<std::pair<LinearExpr, Rational>> cover_rows;

  for (int e = 0; e < g.num_edges(); ++e) {
    if (sgn(xi[e]) == 0) continue;
    const std::vector<int> nb = g.edge_neighbourhood(e);
    for (int f : nb) {
      const int id = m.add_variable("nu_" + std::to_string(f) + "_" +
                                    std::to_string(e));
      nu_var[{f, e}] = id;
      edge_cap[f].push_back({id, 1});
    }
    for (int v : end_nodes(g, nb)) {
      const int id = m.add_variable("mu_" + std::to_string(v) + "_" +
                                    std::to_string(e));
      mu_var[{v, e}] = id;
      node_cap[v].push_back({id, 1});
    }
    for (int f : nb) {
      LinearExpr row{{nu_var[{f, e}], 1},
                     {mu_var[{g.edge(f).u, e}], 1},
                     {mu_var[{g.edge(f).v, e}], 1}};
      cover_rows.emplace_back(std::move(row), xi[e]);
    }
  }
  for (int f = 0; f < g.num_edges(); ++f) {
    if (!edge_cap[f].empty()) {
      m.add_constraint(edge_cap[f], Relation::kLessEqual, inst.edge_weight[f]);
    }
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (!node_cap[v].empty()) {
      m.add_constraint(node_cap[v], Relation::kLessEqual, inst.node_weight[v]);
    }
  }
  for (auto& [row, rhs] : cover_rows) {
    m.add_constraint(std::move(row), Relation::kGreaterEqual, rhs);
  }
  m.set_objective(lp::Sense::kMinimize, {});

  const lp::LpResult res = lp::simplex_solve(m);
  if (res.status != lp::LpStatus::kOptimal) return std::nullopt;
  EdsDualCompletion out;
  for (const auto& [key, id] : nu_var) {
    if (sgn(res.assignment[id]) != 0) out.nu[key] = res.assignment[id];
  }
  for (const auto& [key, id] : mu_var) {
    if (sgn(res.assignment[id]) != 0) out.mu[key] = res.assignment[id];
  }
  GCOVER_CHECK(check_eds_dual(inst, xi, out), "dual completion fails its check");
  return out;
}

bool check_eds_dual(const EdsInstance& inst, const std::vector<Rational>& xi,
                    const EdsDualCompletion& completion) {
  const Graph& g = inst.graph;
  if (static_cast<int>(xi.size()) != g.num_edges()) return false;
  std::vector<Rational> edge_load(g.num_edges());
  std::vector<Rational> node_load(g.num_nodes());
  const auto lookup = [](const std::map<std::pair<int, int>, Rational>& mp,
                         int a, int b) {
    const auto it = mp.find({a, b});
    return it == mp.end() ? Rational(0) : it->second;
  };
  for (const auto& [key, val] : completion.nu) {
    const auto [f, e] = key;
    if (f < 0 || f >= g.num_edges() || e < 0 || e >= g.num_edges()) return false;
    if (sgn(val) < 0) return false;
    if (!g.edge(f).has(g.edge(e).u) && !g.edge(f).has(g.edge(e).v)) return false;
    edge_load[f] += val;
  }
  for (const auto& [key, val] : completion.mu) {
    const auto [v, e] = key;
    if (v < 0 || v >= g.num_nodes() || e < 0 || e >= g.num_edges()) return false;
    if (sgn(val) < 0) return false;
    node_load[v] += val;
  }
  for (int f = 0; f < g.num_edges(); ++f) {
    if (edge_load[f] > inst.edge_weight[f]) return false;
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (node_load[v] > inst.node_weight[v]) return false;
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (sgn(xi[e]) < 0 || ExtRat(xi[e]) > inst.penalty[e]) return false;
    if (sgn(xi[e]) == 0) continue;
    for (int f : g.edge_neighbourhood(e)) {
      const Rational cover = lookup(completion.nu, f, e) +
                             lookup(completion.mu, g.edge(f).u, e) +
                             lookup(completion.mu, g.edge(f).v, e);
      if (cover < xi[e]) return false;
    }
  }
  return true;
}

}  // namespace gcover
