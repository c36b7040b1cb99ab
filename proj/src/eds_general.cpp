#include "gcover/eds_general.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "gcover/errors.hpp"
#include "gcover/lp.hpp"
#include "gcover/relaxation.hpp"

namespace gcover {

namespace {

Rational solve_value(const lp::LpModel& model) {
  const lp::LpResult res = lp::simplex_solve(model);
  GCOVER_CHECK(res.status == lp::LpStatus::kOptimal,
               std::string("relaxation not optimal: ") + to_string(res.status));
  return res.value;
}

Rational edge_cover_value(const EdgeCoverInstance& ec) {
  return solve_value(build_relaxation(ec, RelaxationKind::kEdgeCover).model);
}

// Weight of the edge joining a and b in g, or +inf.
ExtRat join_weight(const EdgeCoverInstance& ec, int a, int b) {
  for (int e : ec.graph.incident(a)) {
    if (ec.graph.edge(e).other(a) == b) return ExtRat(ec.edge_weight[e]);
  }
  return ExtRat::infinity();
}

int join_edge(const Graph& g, int a, int b) {
  for (int e : g.incident(a)) {
    if (g.edge(e).other(a) == b) return e;
  }
  return -1;
}

}  // namespace

EdsLpPoint solve_eds_relaxation(const EdsInstance& inst) {
  const Relaxation r = build_relaxation(inst, RelaxationKind::kStrengthened);
  const lp::LpResult res = lp::simplex_solve(r.model);
  GCOVER_CHECK(res.status == lp::LpStatus::kOptimal,
               std::string("relaxation not optimal: ") + to_string(res.status));
  EdsLpPoint pt;
  pt.value = res.value;
  const int m = inst.graph.num_edges();
  // x(e) may exceed every y(C, e) when it is free; lowering it keeps the
  // point feasible since x(v) >= x(e) is not a row of the model.
  pt.x_edge.assign(m, Rational(0));
  for (std::size_t c = 0; c < r.demand_sets.size(); ++c) {
    for (std::size_t k = 0; k < r.demand_sets[c].size(); ++k) {
      const int e = r.demand_sets[c][k];
      pt.x_edge[e] = std::max(pt.x_edge[e], res.assignment[r.y[c][k]]);
    }
  }
  for (int v : r.x_node) pt.x_node.push_back(res.assignment[v]);
  for (int z : r.z) pt.z.push_back(z >= 0 ? res.assignment[z] : Rational(0));
  return pt;
}

EdgeCoverBuild build_edge_cover_instance(const EdsInstance& inst,
                                         const std::vector<Rational>& x_edge) {
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  EdgeCoverBuild b;
  EdgeCoverInstance& t = b.thresholded;
  t.graph = g;
  t.node_weight = inst.node_weight;
  t.edge_weight = inst.edge_weight;
  t.demand.assign(n, false);
  const Rational quarter(1, 4);
  for (int v = 0; v < n; ++v) {
    Rational sum = 0;
    for (int e : g.incident(v)) sum += x_edge[e];
    t.demand[v] = sum >= quarter;
  }

  EdgeCoverInstance& r = b.reduced;
  r.node_weight = inst.node_weight;
  r.demand = t.demand;
  std::vector<Edge> edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (t.demand[ed.u] && t.demand[ed.v]) {
      const int s = static_cast<int>(r.node_weight.size());
      r.node_weight.push_back(inst.edge_weight[e]);
      r.demand.push_back(false);
      edges.push_back({ed.u, s});
      edges.push_back({s, ed.v});
      r.edge_weight.push_back(0);
      r.edge_weight.push_back(0);
      b.origin_edge.push_back(e);
      b.origin_edge.push_back(e);
    } else {
      edges.push_back(ed);
      r.edge_weight.push_back(inst.edge_weight[e]);
      b.origin_edge.push_back(e);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (r.demand[v]) r.node_weight[v] = 0;
  }
  r.graph = Graph(static_cast<int>(r.node_weight.size()), std::move(edges));
  return b;
}

FacilityLocationResult greedy_facility_location(
    const FacilityLocationInstance& fl) {
  const int nc = fl.num_clients();
  const int nf = fl.num_facilities();
  FacilityLocationResult res;
  res.assignment.assign(nc, -1);
  std::vector<bool> opened(nf, false);
  Rational cost = 0;
  int left = nc;

  while (left > 0) {
    std::optional<Rational> best_ratio;
    int best_f = -1;
    std::vector<int> best_clients;
    for (int f = 0; f < nf; ++f) {
      std::vector<std::pair<Rational, int>> cand;
      for (int c = 0; c < nc; ++c) {
        if (res.assignment[c] < 0 && fl.connection[c][f].is_finite()) {
          cand.emplace_back(fl.connection[c][f].finite(), c);
        }
      }
      std::sort(cand.begin(), cand.end());
      Rational total = opened[f] ? Rational(0) : fl.opening[f];
      for (std::size_t k = 0; k < cand.size(); ++k) {
        total += cand[k].first;
        Rational ratio = total / static_cast<long>(k + 1);
        if (!best_ratio || ratio < *best_ratio) {
          best_ratio = ratio;
          best_f = f;
          best_clients.clear();
          for (std::size_t j = 0; j <= k; ++j) {
            best_clients.push_back(cand[j].second);
          }
        }
      }
    }
    if (best_f < 0) break;
    if (!opened[best_f]) cost += fl.opening[best_f];
    opened[best_f] = true;
    for (int c : best_clients) {
      res.assignment[c] = best_f;
      cost += fl.connection[c][best_f].finite();
      --left;
    }
  }

  res.cost = ExtRat(cost);
  if (left > 0) {
    res.cost = ExtRat::infinity();
    if (nf > 0) {
      opened[0] = true;
      for (int& a : res.assignment) {
        if (a < 0) a = 0;
      }
    }
  }
  for (int f = 0; f < nf; ++f) {
    if (opened[f]) res.open.push_back(f);
  }
  return res;
}

EdsGeneralResult solve_eds_general(const EdsInstance& inst) {
  validate(inst);
  const Graph& g = inst.graph;
  EdsGeneralResult out;
  out.lp = solve_eds_relaxation(inst);
  out.factor = 4 * harmonic(g.num_nodes());

  const EdgeCoverBuild build = build_edge_cover_instance(inst, out.lp.x_edge);
  const EdgeCoverInstance& red = build.reduced;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (build.thresholded.demand[v]) out.demand_nodes.push_back(v);
  }

  // Clients are the demand nodes, facilities every other node of the
  // reduced graph; both in ascending node order.
  std::vector<int> clients = out.demand_nodes;
  std::vector<int> facilities;
  for (int v = 0; v < red.graph.num_nodes(); ++v) {
    if (!red.demand[v]) facilities.push_back(v);
  }
  FacilityLocationInstance fl;
  for (int f : facilities) fl.opening.push_back(red.node_weight[f]);
  for (int c : clients) {
    std::vector<ExtRat> row;
    for (int f : facilities) row.push_back(join_weight(red, c, f));
    fl.connection.push_back(std::move(row));
  }
  const FacilityLocationResult greedy = greedy_facility_location(fl);
  out.num_clients = static_cast<int>(clients.size());

  std::set<int> chosen;
  for (std::size_t c = 0; c < clients.size(); ++c) {
    const int a = greedy.assignment[c];
    if (a < 0) continue;
    const int e = join_edge(red.graph, clients[c], facilities[a]);
    if (e >= 0) chosen.insert(build.origin_edge[e]);
  }

  // Extra cover edges of a node are dropped in descending index while all
  // demand nodes stay touched and the objective does not grow.
  std::vector<int> edges(chosen.begin(), chosen.end());
  for (int k = static_cast<int>(edges.size()) - 1; k >= 0; --k) {
    std::vector<int> without = edges;
    without.erase(without.begin() + k);
    if (!covers(build.thresholded, without)) continue;
    if (evaluate_eds(inst, without).total <= evaluate_eds(inst, edges).total) {
      edges = std::move(without);
    }
  }
  out.solution = evaluate_eds(inst, edges);

  for (int e = 0; e < g.num_edges(); ++e) {
    out.lp_cost_terms += inst.edge_weight[e] * out.lp.x_edge[e];
    if (inst.penalty[e].is_finite()) {
      out.penalty_budget += 2 * inst.penalty[e].finite() * out.lp.z[e];
    }
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    out.lp_cost_terms += inst.node_weight[v] * out.lp.x_node[v];
  }
  out.ec_thresholded = edge_cover_value(build.thresholded);
  out.ec_reduced = edge_cover_value(red);
  out.greedy_cost = greedy.cost.is_finite() ? greedy.cost.finite() : Rational(-1);

  VerificationReport& rep = out.bounds;
  rep.add("demand-nodes-covered", covers(build.thresholded, out.solution.edges),
          "some node with incident LP mass >= 1/4 is untouched");
  rep.add("rounding-bound", out.ec_thresholded <= 4 * out.lp_cost_terms,
          "EC = " + to_string(out.ec_thresholded) + " > 4 * " +
              to_string(out.lp_cost_terms));
  rep.add("greedy-bound",
          greedy.cost.is_finite() &&
              greedy.cost.finite() <=
                  harmonic(out.num_clients) * out.ec_reduced,
          "greedy " + to_string(greedy.cost) + " > H(" +
              std::to_string(out.num_clients) + ") * " +
              to_string(out.ec_reduced));
  rep.add("penalty-bound", out.solution.penalty <= ExtRat(out.penalty_budget),
          "penalty " + to_string(out.solution.penalty) + " > " +
              to_string(out.penalty_budget));
  rep.add("approximation-bound",
          out.solution.total <= ExtRat(out.factor * out.lp.value),
          "objective " + to_string(out.solution.total) + " > " +
              to_string(out.factor) + " * " + to_string(out.lp.value));
  return out;
}

VerificationReport verify_eds_general(const EdsInstance& inst,
                                      const std::vector<int>& edges,
                                      const Rational& lower_bound) {
  validate(inst);
  VerificationReport rep;
  const int m = inst.graph.num_edges();
  const bool ids_ok = std::all_of(edges.begin(), edges.end(),
                                  [m](int e) { return e >= 0 && e < m; });
  rep.add("edge-ids-valid", ids_ok, "edge id out of range");
  if (!ids_ok) return rep;
  const EdsLpPoint lp = solve_eds_relaxation(inst);
  rep.add("lower-bound-matches", lp.value == lower_bound,
          "certificate states " + to_string(lower_bound) + ", relaxation is " +
              to_string(lp.value));
  const Solution sol = evaluate_eds(inst, edges);
  rep.add("objective-finite", sol.total.is_finite(),
          "an edge with +inf penalty is not dominated");
  const Rational factor = 4 * harmonic(inst.graph.num_nodes());
  rep.add("approximation-bound", sol.total <= ExtRat(factor * lp.value),
          "objective " + to_string(sol.total) + " > " + to_string(factor) +
              " * " + to_string(lp.value));
  return rep;
}

}  // namespace gcover
