#include "gcover/instance.hpp"

#include <algorithm>

#include "gcover/errors.hpp"

namespace gcover {

namespace {

struct NamedKind {
  ProblemKind kind;
  const char* name;
};

constexpr NamedKind kKinds[] = {
    {ProblemKind::kEdsTree, "eds-tree"},
    {ProblemKind::kMulticutTree, "multicut-tree"},
    {ProblemKind::kEdsGeneral, "eds-general"},
    {ProblemKind::kSetCover, "set-cover"},
    {ProblemKind::kFacilityLocation, "facility-location"},
};

void check_weights(const std::vector<Rational>& w, std::size_t expected,
                   const char* what) {
  if (w.size() != expected) {
    throw UsageError(std::string(what) + " count does not match the graph");
  }
  for (const Rational& x : w) {
    if (sgn(x) < 0) throw UsageError(std::string(what) + " is negative");
  }
}

void normalize(std::vector<int>& edges, int m) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (int e : edges) {
    if (e < 0 || e >= m) throw UsageError("edge id out of range");
  }
}

// Sums edge and node weights of F into sol.
void fill_weights(const Graph& g, const std::vector<Rational>& nw,
                  const std::vector<Rational>& ew, Solution& sol) {
  std::vector<bool> in_v(g.num_nodes(), false);
  sol.edge_weight = 0;
  sol.node_weight = 0;
  for (int e : sol.edges) {
    sol.edge_weight += ew[e];
    in_v[g.edge(e).u] = true;
    in_v[g.edge(e).v] = true;
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (in_v[v]) sol.node_weight += nw[v];
  }
}

}  // namespace

const char* to_string(ProblemKind kind) {
  for (const NamedKind& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

ProblemKind parse_problem_kind(const std::string& name) {
  for (const NamedKind& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  throw UsageError("unknown problem kind '" + name + "'");
}

ProblemKind kind_of(const Instance& inst) {
  struct Visitor {
    ProblemKind operator()(const EdsInstance& i) const {
      return i.is_tree() ? ProblemKind::kEdsTree : ProblemKind::kEdsGeneral;
    }
    ProblemKind operator()(const MulticutInstance&) const {
      return ProblemKind::kMulticutTree;
    }
    ProblemKind operator()(const SetCoverInstance&) const {
      return ProblemKind::kSetCover;
    }
    ProblemKind operator()(const FacilityLocationInstance&) const {
      return ProblemKind::kFacilityLocation;
    }
  };
  return std::visit(Visitor{}, inst);
}

void validate(const EdsInstance& inst) {
  check_weights(inst.node_weight, inst.graph.num_nodes(), "node weight");
  check_weights(inst.edge_weight, inst.graph.num_edges(), "edge weight");
  if (inst.penalty.size() != inst.edge_weight.size()) {
    throw UsageError("penalty count does not match the graph");
  }
  for (const ExtRat& p : inst.penalty) {
    if (p < ExtRat(0)) throw UsageError("penalty is negative");
  }
  if (inst.root) RootedTree(inst.graph, *inst.root);
}

void validate(const MulticutInstance& inst) {
  check_weights(inst.node_weight, inst.graph.num_nodes(), "node weight");
  check_weights(inst.edge_weight, inst.graph.num_edges(), "edge weight");
  RootedTree(inst.graph, inst.root);
  for (const Demand& d : inst.demands) {
    const int n = inst.graph.num_nodes();
    if (d.s < 0 || d.s >= n || d.t < 0 || d.t >= n) {
      throw UsageError("demand references an unknown node");
    }
    if (d.s == d.t) throw UsageError("demand endpoints coincide");
    if (d.penalty < ExtRat(0)) throw UsageError("penalty is negative");
  }
}

void validate(const SetCoverInstance& inst) {
  if (inst.ground_size < 0) throw UsageError("negative ground set size");
  for (const CoverSet& s : inst.sets) {
    if (sgn(s.cost) < 0) throw UsageError("set cost is negative");
    if (s.members.empty()) throw UsageError("set is empty");
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      if (s.members[i] < 0 || s.members[i] >= inst.ground_size) {
        throw UsageError("set member out of range");
      }
      if (i > 0 && s.members[i] <= s.members[i - 1]) {
        throw UsageError("set members must be ascending and distinct");
      }
    }
  }
}

void validate(const FacilityLocationInstance& inst) {
  for (const Rational& o : inst.opening) {
    if (sgn(o) < 0) throw UsageError("opening cost is negative");
  }
  for (const auto& row : inst.connection) {
    if (static_cast<int>(row.size()) != inst.num_facilities()) {
      throw UsageError("connection row has the wrong length");
    }
    for (const ExtRat& d : row) {
      if (d < ExtRat(0)) throw UsageError("connection cost is negative");
    }
  }
}

std::vector<int> uncovered_eds_edges(const EdsInstance& inst,
                                     const std::vector<int>& edges) {
  const Graph& g = inst.graph;
  std::vector<bool> touched(g.num_nodes(), false);
  for (int e : edges) {
    touched[g.edge(e).u] = true;
    touched[g.edge(e).v] = true;
  }
  std::vector<int> out;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!touched[g.edge(e).u] && !touched[g.edge(e).v]) out.push_back(e);
  }
  return out;
}

std::vector<int> uncovered_demands(const MulticutInstance& inst,
                                   const std::vector<int>& edges) {
  const RootedTree t = inst.tree();
  std::vector<bool> cut(inst.graph.num_edges(), false);
  for (int e : edges) cut[e] = true;
  std::vector<int> out;
  for (std::size_t i = 0; i < inst.demands.size(); ++i) {
    const auto path = t.path_edges(inst.demands[i].s, inst.demands[i].t);
    if (std::none_of(path.begin(), path.end(), [&](int e) { return cut[e]; })) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

Solution evaluate_eds(const EdsInstance& inst, std::vector<int> edges) {
  Solution sol;
  normalize(edges, inst.graph.num_edges());
  sol.edges = std::move(edges);
  fill_weights(inst.graph, inst.node_weight, inst.edge_weight, sol);
  sol.penalty = 0;
  for (int e : uncovered_eds_edges(inst, sol.edges)) sol.penalty += inst.penalty[e];
  sol.total = ExtRat(sol.edge_weight + sol.node_weight) + sol.penalty;
  return sol;
}

Solution evaluate_multicut(const MulticutInstance& inst,
                           std::vector<int> edges) {
  Solution sol;
  normalize(edges, inst.graph.num_edges());
  sol.edges = std::move(edges);
  fill_weights(inst.graph, inst.node_weight, inst.edge_weight, sol);
  sol.penalty = 0;
  for (int i : uncovered_demands(inst, sol.edges)) {
    sol.penalty += inst.demands[i].penalty;
  }
  sol.total = ExtRat(sol.edge_weight + sol.node_weight) + sol.penalty;
  return sol;
}

bool covers(const EdgeCoverInstance& inst, const std::vector<int>& edges) {
  std::vector<bool> touched(inst.graph.num_nodes(), false);
  for (int e : edges) {
    touched[inst.graph.edge(e).u] = true;
    touched[inst.graph.edge(e).v] = true;
  }
  for (int v = 0; v < inst.graph.num_nodes(); ++v) {
    if (inst.demand[v] && !touched[v]) return false;
  }
  return true;
}

Rational edge_cover_cost(const EdgeCoverInstance& inst,
                         const std::vector<int>& edges) {
  Solution sol;
  sol.edges = edges;
  normalize(sol.edges, inst.graph.num_edges());
  fill_weights(inst.graph, inst.node_weight, inst.edge_weight, sol);
  return sol.edge_weight + sol.node_weight;
}

}  // namespace gcover
