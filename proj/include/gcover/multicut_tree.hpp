#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gcover/instance.hpp"
#include "gcover/report.hpp"

namespace gcover {

// Multicut instance with every penalty +inf. Per finite-penalty demand i
// (in demand order) two nodes s'_i, s''_i are appended below s_i, with
// edges s_i s'_i (weight big_m) and s'_i s''_i (weight pi_i); the demand
// becomes (s''_i, t_i). Demand indices are preserved.
struct PrizeCollectingReduction {
  MulticutInstance reduced;
  Rational big_m;                 // 1 + all finite weights and penalties
  std::vector<int> penalty_edge;  // per demand, -1 when pi_i = +inf
  std::vector<int> big_m_edge;    // per demand, -1 when pi_i = +inf
  int original_nodes = 0;
  int original_edges = 0;
};

PrizeCollectingReduction reduce_prize_collecting(const MulticutInstance& inst);

// Dual solution over the reduced instance, demand indices as in the input.
// nu is keyed by (edge, demand), mu by (node, demand); absent entries are 0.
struct MulticutDual {
  std::vector<Rational> xi;
  std::map<std::pair<int, int>, Rational> nu;
  std::map<std::pair<int, int>, Rational> mu;

  Rational sum() const;
};

// Dual variables of a multicut instance whose penalties are all +inf.
// Demands are referred to by position; position order is the processing
// order of the primal-dual algorithm.
class MulticutState {
 public:
  explicit MulticutState(const MulticutInstance& inst);

  const MulticutInstance& instance() const { return inst_; }
  const RootedTree& tree() const { return tree_; }
  int num_demands() const { return static_cast<int>(paths_.size()); }
  const std::vector<int>& path_edges(int i) const { return paths_[i]; }
  const std::vector<int>& path_nodes(int i) const { return path_nodes_[i]; }
  bool on_path(int e, int i) const { return edge_slot_[i][e] >= 0; }
  bool node_on_path(int v, int i) const { return node_slot_[i][v] >= 0; }

  const Rational& xi(int i) const { return xi_[i]; }
  Rational nu(int e, int i) const;
  Rational mu(int v, int i) const;
  void set_xi(int i, Rational value);
  void set_nu(int e, int i, Rational value);
  void set_mu(int v, int i, Rational value);

  Rational edge_load(int e) const;  // sum_i nu(e, i)
  Rational node_load(int v) const;  // sum_i mu(v, i)
  bool tight(int e, int i) const;
  bool edge_saturated(int e) const;
  bool node_saturated(int v) const;
  bool bottleneck(int e, int i) const;
  // {j < i : mu(v, j) > 0}
  std::vector<int> earlier_users(int i, int v) const;
  // Whether some mu(v, j), j < i, can be decreased. A node is
  // non-relaxable iff no earlier demand uses it, or every earlier demand j
  // using it has a bottleneck edge at v whose other end is non-relaxable
  // with regard to j. The recursion descends in demand order.
  bool relaxable(int v, int i) const;
  // Pinned nodes are never relaxable (end nodes of the growing edge set).
  void pin(int v);
  bool pinned(int v) const { return pinned_[v]; }
  std::vector<int> relaxable_set(int i) const;  // ascending nodes of V_i

  // Constraints of the dual with nonnegativity, checked exactly.
  bool feasible() const;

 private:
  void touch() { memo_.clear(); }

  const MulticutInstance& inst_;
  RootedTree tree_;
  std::vector<std::vector<int>> paths_;
  std::vector<std::vector<int>> path_nodes_;
  std::vector<std::vector<int>> edge_slot_;  // [demand][edge] -> slot or -1
  std::vector<std::vector<int>> node_slot_;  // [demand][node] -> slot or -1
  std::vector<Rational> xi_;
  std::vector<std::vector<Rational>> nu_;  // [demand][slot]
  std::vector<std::vector<Rational>> mu_;  // [demand][slot]
  std::vector<bool> pinned_;
  mutable std::map<std::pair<int, int>, bool> memo_;
};

struct MulticutResult {
  Solution solution;                // evaluated on the input instance
  MulticutDual dual;                // over the reduced instance
  std::vector<int> reduced_edges;   // chosen edges of the reduced instance
  std::vector<int> witness;         // per demand, -1 when never processed
  std::vector<int> processed;       // demand indices in processing order
  Rational ratio;                   // objective / sum xi, or 1
  int lp_steps = 0;
  // Structural properties of the cut and the growing edge set. They
  // usually hold but are not needed for the certified bound, which
  // verify_multicut checks directly.
  VerificationReport structure;
};

// Primal-dual 2-approximation for prize-collecting multicut on a tree.
MulticutResult solve_multicut_tree(const MulticutInstance& inst);

// Checks (a) every reduced demand path is cut, (b) the dual satisfies its
// constraints exactly, (c) cost of the cut <= 2 * sum xi, (d) chosen edges
// and their end nodes are saturated and no big-M edge is chosen.
VerificationReport verify_multicut(const MulticutInstance& inst,
                                   const std::vector<int>& reduced_edges,
                                   const MulticutDual& dual);

}  // namespace gcover
