#include "gcover/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gcover/errors.hpp"

namespace gcover {

namespace {

// Integer sampling via plain modulo so that streams agree across standard
// library implementations (std::uniform_int_distribution does not).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) {
    if (hi < lo) throw UsageError("empty sampling range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng_() % span);
  }
  bool chance(long num, long den) {
    if (num <= 0 || den <= 0) return false;
    return static_cast<long>(rng_() % static_cast<std::uint64_t>(den)) < num;
  }

 private:
  std::mt19937_64 rng_;
};

void check_ranges(const GenParams& p) {
  if (p.weight_lo < 0 || p.weight_hi < p.weight_lo) {
    throw UsageError("weight range must satisfy 0 <= lo <= hi");
  }
  if (p.penalty_lo < 0 || p.penalty_hi < p.penalty_lo) {
    throw UsageError("penalty range must satisfy 0 <= lo <= hi");
  }
}

Rational weight(Sampler& s, const GenParams& p) {
  return Rational(s.uniform(p.weight_lo, p.weight_hi));
}

ExtRat penalty(Sampler& s, const GenParams& p) {
  if (s.chance(p.inf_num, p.inf_den)) return ExtRat::infinity();
  return ExtRat(Rational(s.uniform(p.penalty_lo, p.penalty_hi)));
}

// Uniform random parent among already placed nodes; root 0.
Graph random_tree(Sampler& s, int n) {
  if (n < 1) throw UsageError("a tree needs at least one node");
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    edges.push_back({static_cast<int>(s.uniform(0, v - 1)), v});
  }
  return Graph(n, std::move(edges));
}

std::vector<Rational> weights(Sampler& s, const GenParams& p, int count) {
  std::vector<Rational> w;
  for (int i = 0; i < count; ++i) w.push_back(weight(s, p));
  return w;
}

EdsInstance random_tree_eds(Sampler& s, const GenParams& p) {
  EdsInstance inst;
  inst.graph = random_tree(s, p.nodes);
  inst.root = 0;
  inst.node_weight = weights(s, p, p.nodes);
  inst.edge_weight = weights(s, p, p.nodes - 1);
  for (int e = 0; e + 1 < p.nodes; ++e) inst.penalty.push_back(penalty(s, p));
  return inst;
}

EdsInstance random_graph_eds(Sampler& s, const GenParams& p) {
  const long max_edges = static_cast<long>(p.nodes) * (p.nodes - 1) / 2;
  if (p.nodes < 2 || p.edges < 1 || p.edges > max_edges) {
    throw UsageError("edge count must be in 1..n(n-1)/2");
  }
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  while (static_cast<int>(edges.size()) < p.edges) {
    int u = static_cast<int>(s.uniform(0, p.nodes - 1));
    int v = static_cast<int>(s.uniform(0, p.nodes - 1));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (seen.insert({u, v}).second) edges.push_back({u, v});
  }
  EdsInstance inst;
  inst.graph = Graph(p.nodes, std::move(edges));
  inst.node_weight = weights(s, p, p.nodes);
  inst.edge_weight = weights(s, p, p.edges);
  for (int e = 0; e < p.edges; ++e) inst.penalty.push_back(penalty(s, p));
  return inst;
}

MulticutInstance random_tree_multicut(Sampler& s, const GenParams& p) {
  if (p.nodes < 2) throw UsageError("multicut needs at least two nodes");
  MulticutInstance inst;
  inst.graph = random_tree(s, p.nodes);
  inst.root = 0;
  inst.node_weight = weights(s, p, p.nodes);
  inst.edge_weight = weights(s, p, p.nodes - 1);
  for (int i = 0; i < p.demands; ++i) {
    const int a = static_cast<int>(s.uniform(0, p.nodes - 1));
    int b = static_cast<int>(s.uniform(0, p.nodes - 2));
    if (b >= a) ++b;
    inst.demands.push_back({a, b, penalty(s, p)});
  }
  return inst;
}

SetCoverInstance random_set_cover(Sampler& s, const GenParams& p) {
  if (p.nodes < 1 || p.sets < 0) throw UsageError("bad set cover size");
  SetCoverInstance inst;
  inst.ground_size = p.nodes;
  for (int i = 0; i < p.sets; ++i) {
    CoverSet cs;
    cs.cost = weight(s, p);
    for (int v = 0; v < p.nodes; ++v) {
      if (s.chance(1, 2)) cs.members.push_back(v);
    }
    if (cs.members.empty()) {
      cs.members.push_back(static_cast<int>(s.uniform(0, p.nodes - 1)));
    }
    inst.sets.push_back(std::move(cs));
  }
  return inst;
}

FacilityLocationInstance random_facility_location(Sampler& s,
                                                  const GenParams& p) {
  if (p.nodes < 0 || p.facilities < 0) throw UsageError("bad sizes");
  FacilityLocationInstance inst;
  inst.opening = weights(s, p, p.facilities);
  inst.connection.assign(p.nodes, {});
  for (auto& row : inst.connection) {
    for (int f = 0; f < p.facilities; ++f) {
      if (s.chance(p.inf_num, p.inf_den)) {
        row.push_back(ExtRat::infinity());
      } else {
        row.push_back(ExtRat(weight(s, p)));
      }
    }
  }
  return inst;
}

}  // namespace

EdsInstance star_gap_eds(int n) {
  if (n < 2) throw UsageError("star-gap-eds needs n >= 2");
  EdsInstance inst;
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({0, i});
  inst.graph = Graph(n + 1, std::move(edges));
  inst.root = 0;
  inst.node_weight.assign(n + 1, Rational(0));
  inst.node_weight[0] = 1;
  inst.edge_weight.assign(n, Rational(0));
  inst.penalty.assign(n, ExtRat::infinity());
  return inst;
}

MulticutInstance subdivided_star_multicut(int n) {
  if (n < 2) throw UsageError("subdivided-star-multicut needs n >= 2");
  // Edge order follows child ids: centre->s_i first, then s_i->leaf_i.
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({0, i});
  for (int i = 1; i <= n; ++i) edges.push_back({i, n + i});
  MulticutInstance inst;
  inst.graph = Graph(2 * n + 1, std::move(edges));
  inst.root = 0;
  inst.node_weight.assign(2 * n + 1, Rational(0));
  for (int i = 1; i <= n; ++i) inst.node_weight[i] = 1;
  inst.edge_weight.assign(2 * n, Rational(0));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      inst.demands.push_back({n + i, n + j, ExtRat::infinity()});
    }
  }
  return inst;
}

const std::vector<std::string>& generator_kinds() {
  static const std::vector<std::string> kinds = {
      "random-tree-eds",  "random-tree-multicut",  "random-graph-eds",
      "star-gap-eds",     "subdivided-star-multicut", "random-set-cover",
      "random-facility-location"};
  return kinds;
}

Instance gen_instance(const std::string& kind, const GenParams& params,
                      std::uint64_t seed) {
  check_ranges(params);
  Sampler s(seed);
  if (kind == "random-tree-eds") return random_tree_eds(s, params);
  if (kind == "random-tree-multicut") return random_tree_multicut(s, params);
  if (kind == "random-graph-eds") return random_graph_eds(s, params);
  if (kind == "star-gap-eds") return star_gap_eds(params.nodes);
  if (kind == "subdivided-star-multicut") {
    return subdivided_star_multicut(params.nodes);
  }
  if (kind == "random-set-cover") return random_set_cover(s, params);
  if (kind == "random-facility-location") {
    return random_facility_location(s, params);
  }
  throw UsageError("unknown generator kind '" + kind + "'");
}

}  // namespace gcover
