#include "gcover/oracle.hpp"

#include <algorithm>

#include "gcover/errors.hpp"
#include "gcover/relaxation.hpp"

namespace gcover {

namespace {

// Minimum-cost selection of items. Choosing an item pays its cost plus the
// weight of every node it touches for the first time; a demand (a set of
// items) left without a chosen item pays its penalty.
struct CoveringProblem {
  std::vector<Rational> item_cost;
  std::vector<std::vector<int>> item_nodes;
  std::vector<Rational> node_weight;
  std::vector<std::vector<int>> demands;
  std::vector<ExtRat> penalty;
};

class Enumerator {
 public:
  explicit Enumerator(const CoveringProblem& p)
      : p_(p), m_(static_cast<int>(p.item_cost.size())),
        chosen_(m_, false), touch_(p.node_weight.size(), 0),
        settled_at_(m_ + 1) {
    for (std::size_t d = 0; d < p.demands.size(); ++d) {
      const auto& items = p.demands[d];
      const int last =
          items.empty() ? 0 : *std::max_element(items.begin(), items.end()) + 1;
      settled_at_[last].push_back(static_cast<int>(d));
    }
  }

  std::pair<std::vector<int>, ExtRat> run() {
    best_ = ExtRat::infinity();
    recurse(0, ExtRat(0));
    return {best_set_, best_};
  }

 private:
  ExtRat settle(int depth) const {
    ExtRat add(0);
    for (int d : settled_at_[depth]) {
      const auto& items = p_.demands[d];
      if (std::none_of(items.begin(), items.end(),
                       [&](int i) { return chosen_[i]; })) {
        add += p_.penalty[d];
      }
    }
    return add;
  }

  void recurse(int depth, ExtRat partial) {
    partial += settle(depth);
    if (partial >= best_) return;
    if (depth == m_) {
      best_ = partial;
      best_set_.clear();
      for (int i = 0; i < m_; ++i) {
        if (chosen_[i]) best_set_.push_back(i);
      }
      return;
    }
    recurse(depth + 1, partial);
    chosen_[depth] = true;
    Rational add = p_.item_cost[depth];
    for (int v : p_.item_nodes[depth]) {
      if (touch_[v]++ == 0) add += p_.node_weight[v];
    }
    recurse(depth + 1, partial + ExtRat(add));
    for (int v : p_.item_nodes[depth]) --touch_[v];
    chosen_[depth] = false;
  }

  const CoveringProblem& p_;
  int m_;
  std::vector<bool> chosen_;
  std::vector<int> touch_;
  std::vector<std::vector<int>> settled_at_;
  ExtRat best_;
  std::vector<int> best_set_;
};

void check_cap(int size, int cap, const char* what) {
  if (size > cap) {
    throw UsageError(std::string("brute force refuses ") + std::to_string(size) +
                     " " + what + " (cap " + std::to_string(cap) + ")");
  }
}

CoveringProblem graph_problem(const Graph& g, const std::vector<Rational>& nw,
                              const std::vector<Rational>& ew) {
  CoveringProblem p;
  p.item_cost = ew;
  for (const Edge& e : g.edges()) p.item_nodes.push_back({e.u, e.v});
  p.node_weight = nw;
  return p;
}

}  // namespace

Solution brute_force_eds(const EdsInstance& inst, int cap) {
  validate(inst);
  check_cap(inst.graph.num_edges(), cap, "edges");
  CoveringProblem p = graph_problem(inst.graph, inst.node_weight, inst.edge_weight);
  p.demands = eds_demand_sets(inst.graph);
  p.penalty = inst.penalty;
  auto [edges, total] = Enumerator(p).run();
  Solution sol = evaluate_eds(inst, edges);
  GCOVER_CHECK(total.is_infinite() || sol.total == total,
               "brute force total mismatch");
  return sol;
}

Solution brute_force_multicut(const MulticutInstance& inst, int cap) {
  validate(inst);
  check_cap(inst.graph.num_edges(), cap, "edges");
  CoveringProblem p = graph_problem(inst.graph, inst.node_weight, inst.edge_weight);
  p.demands = multicut_demand_sets(inst);
  for (const Demand& d : inst.demands) p.penalty.push_back(d.penalty);
  auto [edges, total] = Enumerator(p).run();
  Solution sol = evaluate_multicut(inst, edges);
  GCOVER_CHECK(total.is_infinite() || sol.total == total,
               "brute force total mismatch");
  return sol;
}

ExtRat brute_force_cover(const SetCoverInstance& inst, int cap) {
  validate(inst);
  check_cap(static_cast<int>(inst.sets.size()), cap, "sets");
  CoveringProblem p;
  p.item_nodes.assign(inst.sets.size(), {});
  p.demands.assign(inst.ground_size, {});
  for (std::size_t s = 0; s < inst.sets.size(); ++s) {
    p.item_cost.push_back(inst.sets[s].cost);
    for (int v : inst.sets[s].members) p.demands[v].push_back(static_cast<int>(s));
  }
  p.penalty.assign(inst.ground_size, ExtRat::infinity());
  return Enumerator(p).run().second;
}

ExtRat brute_force_cover(const EdgeCoverInstance& inst, int cap) {
  check_cap(inst.graph.num_edges(), cap, "edges");
  CoveringProblem p = graph_problem(inst.graph, inst.node_weight, inst.edge_weight);
  for (int v = 0; v < inst.graph.num_nodes(); ++v) {
    if (!inst.demand[v]) continue;
    p.demands.push_back(inst.graph.incident(v));
    p.penalty.push_back(ExtRat::infinity());
  }
  return Enumerator(p).run().second;
}

ExtRat brute_force_facility_location(const FacilityLocationInstance& inst,
                                     int cap) {
  validate(inst);
  const int nf = inst.num_facilities();
  check_cap(nf, cap, "facilities");
  ExtRat best = ExtRat::infinity();
  for (long mask = 0; mask < (1L << nf); ++mask) {
    ExtRat cost(0);
    for (int f = 0; f < nf; ++f) {
      if (mask >> f & 1) cost += ExtRat(inst.opening[f]);
    }
    for (const auto& row : inst.connection) {
      ExtRat cheapest = ExtRat::infinity();
      for (int f = 0; f < nf; ++f) {
        if (mask >> f & 1) cheapest = min(cheapest, row[f]);
      }
      cost += cheapest;
    }
    best = min(best, cost);
  }
  return best;
}

}  // namespace gcover
