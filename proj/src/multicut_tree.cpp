#include "gcover/multicut_tree.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <string>

#include "gcover/errors.hpp"
#include "gcover/lp.hpp"

namespace gcover {

PrizeCollectingReduction reduce_prize_collecting(const MulticutInstance& inst) {
  validate(inst);
  PrizeCollectingReduction red;
  red.original_nodes = inst.graph.num_nodes();
  red.original_edges = inst.graph.num_edges();
  red.big_m = 1;
  for (const Rational& w : inst.node_weight) red.big_m += w;
  for (const Rational& w : inst.edge_weight) red.big_m += w;
  for (const Demand& d : inst.demands) {
    if (!d.penalty.is_infinite()) red.big_m += d.penalty.finite();
  }

  std::vector<Edge> edges = inst.graph.edges();
  MulticutInstance& out = red.reduced;
  out.root = inst.root;
  out.node_weight = inst.node_weight;
  out.edge_weight = inst.edge_weight;
  int n = inst.graph.num_nodes();
  for (const Demand& d : inst.demands) {
    if (d.penalty.is_infinite()) {
      red.penalty_edge.push_back(-1);
      red.big_m_edge.push_back(-1);
      out.demands.push_back(d);
      continue;
    }
    const int s1 = n++;
    const int s2 = n++;
    out.node_weight.push_back(0);
    out.node_weight.push_back(0);
    red.big_m_edge.push_back(static_cast<int>(edges.size()));
    edges.push_back({d.s, s1});
    out.edge_weight.push_back(red.big_m);
    red.penalty_edge.push_back(static_cast<int>(edges.size()));
    edges.push_back({s1, s2});
    out.edge_weight.push_back(d.penalty.finite());
    out.demands.push_back({s2, d.t, ExtRat::infinity()});
  }
  out.graph = Graph(n, std::move(edges));
  return red;
}

Rational MulticutDual::sum() const {
  Rational s = 0;
  for (const Rational& x : xi) s += x;
  return s;
}

// ---------------------------------------------------------------------------
// MulticutState

MulticutState::MulticutState(const MulticutInstance& inst)
    : inst_(inst), tree_(inst.graph, inst.root) {
  const int n = inst.graph.num_nodes();
  const int m = inst.graph.num_edges();
  const int k = static_cast<int>(inst.demands.size());
  paths_.resize(k);
  path_nodes_.resize(k);
  edge_slot_.assign(k, std::vector<int>(m, -1));
  node_slot_.assign(k, std::vector<int>(n, -1));
  xi_.assign(k, 0);
  pinned_.assign(n, false);
  nu_.resize(k);
  mu_.resize(k);
  for (int i = 0; i < k; ++i) {
    const Demand& d = inst.demands[i];
    paths_[i] = tree_.path_edges(d.s, d.t);
    std::sort(paths_[i].begin(), paths_[i].end());
    for (int e : paths_[i]) {
      path_nodes_[i].push_back(inst.graph.edge(e).u);
      path_nodes_[i].push_back(inst.graph.edge(e).v);
    }
    auto& nodes = path_nodes_[i];
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (std::size_t s = 0; s < paths_[i].size(); ++s) {
      edge_slot_[i][paths_[i][s]] = static_cast<int>(s);
    }
    for (std::size_t s = 0; s < nodes.size(); ++s) {
      node_slot_[i][nodes[s]] = static_cast<int>(s);
    }
    nu_[i].assign(paths_[i].size(), 0);
    mu_[i].assign(nodes.size(), 0);
  }
}

Rational MulticutState::nu(int e, int i) const {
  const int s = edge_slot_[i][e];
  return s < 0 ? Rational(0) : nu_[i][s];
}

Rational MulticutState::mu(int v, int i) const {
  const int s = node_slot_[i][v];
  return s < 0 ? Rational(0) : mu_[i][s];
}

void MulticutState::set_xi(int i, Rational value) {
  xi_[i] = std::move(value);
  touch();
}

void MulticutState::set_nu(int e, int i, Rational value) {
  const int s = edge_slot_[i][e];
  if (s < 0) throw UsageError("edge is not on the demand path");
  nu_[i][s] = std::move(value);
  touch();
}

void MulticutState::set_mu(int v, int i, Rational value) {
  const int s = node_slot_[i][v];
  if (s < 0) throw UsageError("node is not on the demand path");
  mu_[i][s] = std::move(value);
  touch();
}

Rational MulticutState::edge_load(int e) const {
  Rational sum = 0;
  for (int i = 0; i < num_demands(); ++i) {
    const int s = edge_slot_[i][e];
    if (s >= 0) sum += nu_[i][s];
  }
  return sum;
}

Rational MulticutState::node_load(int v) const {
  Rational sum = 0;
  for (int i = 0; i < num_demands(); ++i) {
    const int s = node_slot_[i][v];
    if (s >= 0) sum += mu_[i][s];
  }
  return sum;
}

bool MulticutState::tight(int e, int i) const {
  const Edge& ed = inst_.graph.edge(e);
  return xi_[i] == nu(e, i) + mu(ed.u, i) + mu(ed.v, i);
}

bool MulticutState::edge_saturated(int e) const {
  return edge_load(e) == inst_.edge_weight[e];
}

bool MulticutState::node_saturated(int v) const {
  return node_load(v) == inst_.node_weight[v];
}

bool MulticutState::bottleneck(int e, int i) const {
  const Edge& ed = inst_.graph.edge(e);
  return on_path(e, i) && tight(e, i) && edge_saturated(e) &&
         node_saturated(ed.u) && node_saturated(ed.v);
}

std::vector<int> MulticutState::earlier_users(int i, int v) const {
  std::vector<int> out;
  for (int j = 0; j < i; ++j) {
    if (sgn(mu(v, j)) > 0) out.push_back(j);
  }
  return out;
}

bool MulticutState::relaxable(int v, int i) const {
  const auto key = std::make_pair(v, i);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool result = false;
  for (int j : pinned_[v] ? std::vector<int>{} : earlier_users(i, v)) {
    bool blocked = false;
    for (int f : inst_.graph.incident(v)) {
      if (!on_path(f, j) || !bottleneck(f, j)) continue;
      if (!relaxable(inst_.graph.edge(f).other(v), j)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      result = true;
      break;
    }
  }
  memo_[key] = result;
  return result;
}

void MulticutState::pin(int v) {
  pinned_[v] = true;
  touch();
}

std::vector<int> MulticutState::relaxable_set(int i) const {
  std::vector<int> out;
  for (int v : path_nodes_[i]) {
    if (relaxable(v, i)) out.push_back(v);
  }
  return out;
}

bool MulticutState::feasible() const {
  const Graph& g = inst_.graph;
  for (int i = 0; i < num_demands(); ++i) {
    if (sgn(xi_[i]) < 0) return false;
    for (const Rational& x : nu_[i]) {
      if (sgn(x) < 0) return false;
    }
    for (const Rational& x : mu_[i]) {
      if (sgn(x) < 0) return false;
    }
    for (int e : paths_[i]) {
      if (xi_[i] > nu(e, i) + mu(g.edge(e).u, i) + mu(g.edge(e).v, i)) return false;
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (edge_load(e) > inst_.edge_weight[e]) return false;
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (node_load(v) > inst_.node_weight[v]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Primal-dual algorithm on an instance whose demands are already in
// processing order.

namespace {

class MulticutSolver {
 public:
  MulticutSolver(const MulticutInstance& inst, std::vector<int> order)
      : inst_(inst),
        st_(inst),
        g_(inst.graph),
        t_(st_.tree()),
        in_f_(g_.num_edges(), false),
        in_fp_(g_.num_edges(), false),
        in_w_(g_.num_edges(), false),
        witness_(st_.num_demands(), -1),
        order_(std::move(order)) {}

  void run() {
    const int k = st_.num_demands();
    for (int p = 0; p < k; ++p) {
      // A demand cut only by edges added for other demands is still
      // processed; its dual stays 0 but it gets a witness of its own.
      if (covered(p, in_w_)) continue;
      minimize_nu();
      int guard = 0;
      while (grow(p)) {
        GCOVER_CHECK(++guard <= 16 * (g_.num_edges() + g_.num_nodes() + k),
                     "dual growth does not terminate");
      }
      processed_.push_back(p);
      const int e = pick_witness(p);
      witness_[p] = e;
      in_w_[e] = true;
      add_to_f(e);
      cascade(p, e);
      check_invariants();
    }
    deletion_phase();
    prune();
    check_final();
  }

  const MulticutState& state() const { return st_; }
  const std::vector<int>& witness() const { return witness_; }
  const std::vector<int>& processed() const { return processed_; }
  int lp_steps() const { return lp_steps_; }
  const VerificationReport& structure() const { return structure_; }
  std::vector<int> chosen() const {
    std::vector<int> out;
    for (int e = 0; e < g_.num_edges(); ++e) {
      if (in_fp_[e]) out.push_back(e);
    }
    return out;
  }

 private:
  bool covered(int i, const std::vector<bool>& set) const {
    const auto& path = st_.path_edges(i);
    return std::any_of(path.begin(), path.end(), [&](int e) { return set[e]; });
  }

  bool in_vf(int v) const {
    for (int e : g_.incident(v)) {
      if (in_f_[e]) return true;
    }
    return false;
  }

  // Lowers every nu(e, j) outside F to the least value keeping e covered.
  void minimize_nu() {
    const Graph& g = g_;
    for (int j : processed_) {
      for (int e : st_.path_edges(j)) {
        if (in_f_[e]) continue;
        Rational need = st_.xi(j) - st_.mu(g.edge(e).u, j) - st_.mu(g.edge(e).v, j);
        if (sgn(need) < 0) need = 0;
        if (need < st_.nu(e, j)) st_.set_nu(e, j, need);
      }
    }
  }

  struct Move {
    enum Kind { kNu, kPlus, kMinus } kind;
    int id;
    int demand;
  };

  // Edges of E_p raised through nu(., p) and nodes raised through mu(., p).
  struct Pattern {
    std::vector<bool> edge;
    std::vector<bool> node;
  };

  // Nodes of P_i in order from s_i to t_i.
  std::vector<int> path_sequence(int i) const {
    const Demand& d = inst_.demands[i];
    const int a = t_.lca(d.s, d.t);
    std::vector<int> seq, down;
    for (int v = d.s; v != a; v = t_.parent(v)) seq.push_back(v);
    seq.push_back(a);
    for (int v = d.t; v != a; v = t_.parent(v)) down.push_back(v);
    seq.insert(seq.end(), down.rbegin(), down.rend());
    return seq;
  }

  // Picks the pattern so that every tight edge of E_p keeps pace with
  // xi(p): an edge may rise if unsaturated, a node if unsaturated or
  // relaxable. Tight edges are covered exactly once where possible, then
  // with as few elements as possible. Returns false when some tight edge
  // is blocked.
  bool build_pattern(int p, Pattern& pat) const {
    pat.edge.assign(g_.num_edges(), false);
    pat.node.assign(g_.num_nodes(), false);
    for (int e : st_.path_edges(p)) {
      const Edge& ed = g_.edge(e);
      if (st_.tight(e, p) && st_.bottleneck(e, p) && !st_.relaxable(ed.u, p) &&
          !st_.relaxable(ed.v, p)) {
        return false;
      }
    }
    const std::vector<int> seq = path_sequence(p);
    const int len = static_cast<int>(seq.size());
    auto node_ok = [&](int v) { return !st_.node_saturated(v) || st_.relaxable(v, p); };
    using Cost = std::pair<int, int>;  // (edges covered twice, elements)
    constexpr int kNone = std::numeric_limits<int>::max();
    const Cost unreachable{kNone, kNone};
    // best[k][x]: cost up to node k with x = whether seq[k] is raised.
    std::vector<std::array<Cost, 2>> best(len, {unreachable, unreachable});
    std::vector<std::array<std::pair<int, int>, 2>> from(len);  // (prev x, h)
    best[0][0] = {0, 0};
    if (node_ok(seq[0])) best[0][1] = {0, 1};
    for (int k = 1; k < len; ++k) {
      const int lo = seq[k - 1], hi = seq[k];
      const int e = t_.parent(hi) == lo ? t_.parent_edge(hi) : t_.parent_edge(lo);
      const bool tight = st_.tight(e, p);
      for (int px = 0; px < 2; ++px) {
        if (best[k - 1][px] == unreachable) continue;
        for (int h = 0; h < 2; ++h) {
          if (h == 1 && st_.edge_saturated(e)) continue;
          for (int x = 0; x < 2; ++x) {
            if (x == 1 && !node_ok(hi)) continue;
            const int cover = px + h + x;
            if (tight && cover == 0) continue;
            Cost c = best[k - 1][px];
            c.first += tight && cover > 1 ? 1 : 0;
            c.second += h + x;
            if (c < best[k][x]) {
              best[k][x] = c;
              from[k][x] = {px, h};
            }
          }
        }
      }
    }
    int x = best[len - 1][1] < best[len - 1][0] ? 1 : 0;
    GCOVER_CHECK(best[len - 1][x] != unreachable, "tight edges cannot keep pace");
    for (int k = len - 1; k >= 0; --k) {
      if (x == 1) pat.node[seq[k]] = true;
      if (k == 0) break;
      const auto [px, h] = from[k][x];
      if (h == 1) {
        const int lo = seq[k - 1], hi = seq[k];
        pat.edge[t_.parent(hi) == lo ? t_.parent_edge(hi) : t_.parent_edge(lo)] = true;
      }
      x = px;
    }
    return true;
  }

  // One step of the increase phase for demand p: raises xi(p) by the
  // largest eps the pattern allows. Earlier demands may add to nu and move
  // mu between nodes to absorb the pattern's node increases, with mass at
  // each node flowing only from older demands to newer ones. Edges of F
  // and their end nodes are frozen. Returns false when xi(p) is stuck.
  bool grow(int p) {
    Pattern pat;
    if (!build_pattern(p, pat)) return false;
    const int n = g_.num_nodes();
    const int m = g_.num_edges();
    lp::LpModel model;
    std::vector<Move> moves;
    const int eps = model.add_variable("eps");
    std::vector<lp::LinearExpr> edge_cap(m);
    std::vector<bool> node_used(n, false);
    std::vector<bool> frozen_node(n);
    for (int v = 0; v < n; ++v) frozen_node[v] = in_vf(v);
    for (int e : st_.path_edges(p)) {
      if (pat.edge[e]) edge_cap[e].push_back({eps, 1});
    }
    for (int v : st_.path_nodes(p)) node_used[v] = node_used[v] || pat.node[v];

    // Variable ids per (demand, slot); -1 when absent.
    std::vector<std::vector<int>> nu_var(st_.num_demands());
    std::vector<std::vector<int>> plus_var(st_.num_demands());
    std::vector<std::vector<int>> minus_var(st_.num_demands());
    for (int q : processed_) {
      const auto& path = st_.path_edges(q);
      const auto& nodes = st_.path_nodes(q);
      nu_var[q].assign(path.size(), -1);
      plus_var[q].assign(nodes.size(), -1);
      minus_var[q].assign(nodes.size(), -1);
      for (std::size_t s = 0; s < path.size(); ++s) {
        const int e = path[s];
        if (in_f_[e] || st_.edge_saturated(e)) continue;
        const int var = model.add_variable("nu");
        moves.push_back({Move::kNu, e, q});
        nu_var[q][s] = var;
        edge_cap[e].push_back({var, 1});
      }
      for (std::size_t s = 0; s < nodes.size(); ++s) {
        const int v = nodes[s];
        if (frozen_node[v]) continue;
        node_used[v] = true;
        int var = model.add_variable("plus");
        moves.push_back({Move::kPlus, v, q});
        plus_var[q][s] = var;
        if (sgn(st_.mu(v, q)) > 0) {
          var = model.add_variable("minus");
          moves.push_back({Move::kMinus, v, q});
          minus_var[q][s] = var;
          model.add_constraint({{var, 1}}, lp::Relation::kLessEqual, st_.mu(v, q));
        }
      }
    }
    auto slot_of = [&](int q, int v) {
      const auto& nodes = st_.path_nodes(q);
      return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), v) -
                              nodes.begin());
    };
    for (int e : st_.path_edges(p)) {
      const Edge& ed = g_.edge(e);
      const int coef = (pat.edge[e] ? 1 : 0) + (pat.node[ed.u] ? 1 : 0) +
                       (pat.node[ed.v] ? 1 : 0) - 1;
      if (coef == 0) continue;
      const Rational slack = st_.nu(e, p) + st_.mu(ed.u, p) + st_.mu(ed.v, p) - st_.xi(p);
      model.add_constraint({{eps, coef}}, lp::Relation::kGreaterEqual, -slack);
    }
    for (int q : processed_) {
      const auto& path = st_.path_edges(q);
      for (std::size_t s = 0; s < path.size(); ++s) {
        const int e = path[s];
        const Edge& ed = g_.edge(e);
        lp::LinearExpr expr;
        if (nu_var[q][s] >= 0) expr.push_back({nu_var[q][s], 1});
        for (int v : {ed.u, ed.v}) {
          const int vs = slot_of(q, v);
          if (plus_var[q][vs] >= 0) expr.push_back({plus_var[q][vs], 1});
          if (minus_var[q][vs] >= 0) expr.push_back({minus_var[q][vs], -1});
        }
        if (expr.empty()) continue;
        const Rational slack =
            st_.nu(e, q) + st_.mu(ed.u, q) + st_.mu(ed.v, q) - st_.xi(q);
        model.add_constraint(std::move(expr), lp::Relation::kGreaterEqual, -slack);
      }
    }
    for (int e = 0; e < m; ++e) {
      if (edge_cap[e].empty()) continue;
      model.add_constraint(std::move(edge_cap[e]), lp::Relation::kLessEqual,
                           inst_.edge_weight[e] - st_.edge_load(e));
    }
    // Every prefix of the demand order may grow by at most the free
    // capacity, so mass at a node flows only from older demands to newer.
    for (int v = 0; v < n; ++v) {
      if (!node_used[v]) continue;
      const Rational free = inst_.node_weight[v] - st_.node_load(v);
      lp::LinearExpr prefix;
      for (int q : processed_) {
        if (!st_.node_on_path(v, q)) continue;
        const int vs = slot_of(q, v);
        if (plus_var[q][vs] >= 0) prefix.push_back({plus_var[q][vs], 1});
        if (minus_var[q][vs] >= 0) prefix.push_back({minus_var[q][vs], -1});
        if (!prefix.empty()) model.add_constraint(prefix, lp::Relation::kLessEqual, free);
      }
      if (pat.node[v]) {
        prefix.push_back({eps, 1});
        model.add_constraint(prefix, lp::Relation::kLessEqual, free);
      }
    }
    model.set_objective(lp::Sense::kMaximize, {{eps, 1}});
    ++lp_steps_;
    lp::LpResult best = lp::simplex_solve(model);
    GCOVER_CHECK(best.status == lp::LpStatus::kOptimal, "growth step is not optimal");
    if (sgn(best.value) == 0) return false;

    // Among maximal steps take one that moves the least dual mass.
    model.add_constraint({{eps, 1}}, lp::Relation::kEqual, best.value);
    lp::LinearExpr total;
    for (int var = 1; var < model.num_variables(); ++var) total.push_back({var, 1});
    model.set_objective(lp::Sense::kMinimize, std::move(total));
    ++lp_steps_;
    const lp::LpResult step = lp::simplex_solve(model);
    GCOVER_CHECK(step.status == lp::LpStatus::kOptimal, "growth step is not optimal");

    const Rational& d = best.value;
    st_.set_xi(p, st_.xi(p) + d);
    for (int e : st_.path_edges(p)) {
      if (pat.edge[e]) st_.set_nu(e, p, st_.nu(e, p) + d);
    }
    for (int v : st_.path_nodes(p)) {
      if (pat.node[v]) st_.set_mu(v, p, st_.mu(v, p) + d);
    }
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const Rational& x = step.assignment[i + 1];
      if (sgn(x) == 0) continue;
      const Move& mv = moves[i];
      switch (mv.kind) {
        case Move::kNu:
          st_.set_nu(mv.id, mv.demand, st_.nu(mv.id, mv.demand) + x);
          break;
        case Move::kPlus:
          st_.set_mu(mv.id, mv.demand, st_.mu(mv.id, mv.demand) + x);
          break;
        case Move::kMinus:
          st_.set_mu(mv.id, mv.demand, st_.mu(mv.id, mv.demand) - x);
          break;
      }
    }
    GCOVER_CHECK(st_.feasible(), "growth step broke dual feasibility");
    return true;
  }

  // Tight with regard to every processed demand whose path holds e.
  bool tight_everywhere(int e) const {
    for (int q : processed_) {
      if (st_.on_path(e, q) && !st_.tight(e, q)) return false;
    }
    return true;
  }

  int pick_witness(int p) {
    int best = -1;
    bool best_strong = false;
    for (int e : st_.path_edges(p)) {
      const Edge& ed = g_.edge(e);
      if (!st_.bottleneck(e, p) || st_.relaxable(ed.u, p) || st_.relaxable(ed.v, p)) {
        continue;
      }
      const bool strong = tight_everywhere(e);
      if (best < 0 || (strong && !best_strong) ||
          (strong == best_strong &&
           t_.depth(t_.lower(e)) > t_.depth(t_.lower(best)))) {
        best = e;
        best_strong = strong;
      }
    }
    GCOVER_CHECK(best >= 0, "no witness edge after dual growth");
    return best;
  }

  void add_to_f(int e) {
    in_f_[e] = true;
    st_.pin(g_.edge(e).u);
    st_.pin(g_.edge(e).v);
  }

  // Every demand j that already charges an end node of a newly added edge
  // gets a bottleneck edge of its own at that node, recursively.
  void cascade(int p, int e) {
    struct Item {
      int node;
      int demand;
      int edge;
    };
    std::vector<Item> work;
    for (int x : {g_.edge(e).u, g_.edge(e).v}) work.push_back({x, p, e});
    while (!work.empty()) {
      const Item it = work.back();
      work.pop_back();
      for (int j : st_.earlier_users(it.demand, it.node)) {
        if (st_.on_path(it.edge, j)) continue;
        int pick = -1;
        bool present = false;
        for (int f : g_.incident(it.node)) {
          if (!st_.on_path(f, j) || !st_.bottleneck(f, j)) continue;
          if (st_.relaxable(g_.edge(f).other(it.node), j)) continue;
          if (in_f_[f]) {
            pick = f;
            present = true;
            break;
          }
          if (pick < 0) pick = f;
        }
        if (pick < 0) {
          note_missing("no bottleneck edge of demand " + std::to_string(order_[j]) +
                       " at node " + std::to_string(it.node) + " while growing");
          continue;
        }
        if (present) continue;
        add_to_f(pick);
        work.push_back({g_.edge(pick).other(it.node), j, pick});
      }
    }
  }

  // Records whether every edge of F is still a bottleneck for each demand
  // whose path holds it.
  void check_invariants() {
    const int k = st_.num_demands();
    for (int e = 0; e < g_.num_edges() && bottleneck_detail_.empty(); ++e) {
      if (!in_f_[e]) continue;
      for (int i = 0; i < k; ++i) {
        if (st_.on_path(e, i) && !st_.bottleneck(e, i)) {
          bottleneck_detail_ = "edge " + std::to_string(e) +
                               " is not a bottleneck for demand " +
                               std::to_string(order_[i]);
          break;
        }
      }
    }
  }

  bool edge_below(int upper_edge, int lower_edge) const {
    return upper_edge != lower_edge &&
           t_.is_ancestor(t_.lower(upper_edge), t_.upper(lower_edge));
  }

  void deletion_phase() {
    for (auto it = processed_.rbegin(); it != processed_.rend(); ++it) {
      const int p = *it;
      std::vector<int> marked;
      for (int v : st_.path_nodes(p)) {
        if (sgn(st_.mu(v, p)) <= 0) continue;
        const auto& inc = g_.incident(v);
        if (std::any_of(inc.begin(), inc.end(), [&](int e) { return in_fp_[e]; })) {
          marked.push_back(v);
        }
      }
      std::vector<int> top;
      for (int v : marked) {
        const bool has_ancestor = std::any_of(marked.begin(), marked.end(), [&](int a) {
          return a != v && t_.is_ancestor(a, v);
        });
        if (!has_ancestor) top.push_back(v);
      }
      for (int v : top) {
        const int f = deletion_edge(p, v);
        if (f < 0) {
          note_missing("no bottleneck edge of demand " + std::to_string(order_[p]) +
                       " at node " + std::to_string(v) + " while deleting");
          continue;
        }
        in_fp_[f] = true;
        for (int e : st_.path_edges(p)) {
          if (in_fp_[e] && edge_below(f, e)) in_fp_[e] = false;
        }
      }
      const int w = witness_[p];
      bool dominated = false;
      for (int e : st_.path_edges(p)) {
        if (in_fp_[e] && (e == w || edge_below(e, w))) dominated = true;
      }
      if (!dominated) in_fp_[w] = true;
    }
  }

  // Drops chosen edges that no demand needs. Edges sharing a side of some
  // processed demand with another chosen edge go first, then the largest
  // saving, then the lowest id.
  void prune() {
    const int k = st_.num_demands();
    for (;;) {
      std::vector<int> hits(k, 0);
      for (int i = 0; i < k; ++i) {
        for (int e : st_.path_edges(i)) hits[i] += in_fp_[e] ? 1 : 0;
      }
      std::vector<int> degree(g_.num_nodes(), 0);
      for (int e = 0; e < g_.num_edges(); ++e) {
        if (!in_fp_[e]) continue;
        ++degree[g_.edge(e).u];
        ++degree[g_.edge(e).v];
      }
      int crowded_before = 0;
      for (int i : processed_) crowded_before += one_per_side(i, in_fp_) ? 0 : 1;
      int drop = -1;
      std::pair<int, Rational> best;
      for (int e = 0; e < g_.num_edges(); ++e) {
        if (!in_fp_[e]) continue;
        bool needed = false;
        for (int i = 0; i < k && !needed; ++i) needed = st_.on_path(e, i) && hits[i] == 1;
        if (needed) continue;
        Rational saving = inst_.edge_weight[e];
        for (int x : {g_.edge(e).u, g_.edge(e).v}) {
          if (degree[x] == 1) saving += inst_.node_weight[x];
        }
        in_fp_[e] = false;
        int crowded = 0;
        for (int i : processed_) crowded += one_per_side(i, in_fp_) ? 0 : 1;
        in_fp_[e] = true;
        std::pair<int, Rational> key{crowded_before - crowded, saving};
        if (drop < 0 || key > best) {
          drop = e;
          best = key;
        }
      }
      if (drop < 0) return;
      in_fp_[drop] = false;
    }
  }

  // At most one chosen edge between each end of demand i and its lca.
  bool one_per_side(int i, const std::vector<bool>& cut) const {
    const Demand& d = inst_.demands[i];
    const int a = t_.lca(d.s, d.t);
    int s_side = 0, t_side = 0;
    for (int e : st_.path_edges(i)) {
      if (!cut[e]) continue;
      const int low = t_.lower(e);
      if (low != a && t_.is_ancestor(low, d.s)) ++s_side;
      if (low != a && t_.is_ancestor(low, d.t)) ++t_side;
    }
    return s_side <= 1 && t_side <= 1;
  }

  // Whether adding f for p leaves every demand handled earlier in this
  // phase with at most one chosen edge per side.
  bool keeps_sides(int p, int f) const {
    std::vector<bool> cut = in_fp_;
    cut[f] = true;
    for (int e : st_.path_edges(p)) {
      if (cut[e] && edge_below(f, e)) cut[e] = false;
    }
    for (int j : processed_) {
      if (j > p && !one_per_side(j, cut)) return false;
    }
    return true;
  }

  void note_missing(std::string what) {
    if (missing_detail_.empty()) missing_detail_ = std::move(what);
  }

  // Bottleneck edge of E_p at v with a non-relaxable other end, or -1. Ties go to
  // edges that keep earlier demands one-per-side, then members of F, then
  // the edge whose lower end is v, then the lowest id.
  int deletion_edge(int p, int v) const {
    int best = -1;
    auto rank = [&](int f) {
      return std::make_tuple(keeps_sides(p, f) ? 0 : 1, in_f_[f] ? 0 : 1,
                             t_.lower(f) == v ? 0 : 1, f);
    };
    for (int f : g_.incident(v)) {
      if (!st_.on_path(f, p) || !st_.bottleneck(f, p)) continue;
      if (st_.relaxable(g_.edge(f).other(v), p)) continue;
      if (best < 0 || rank(f) < rank(best)) best = f;
    }
    return best;
  }

  void check_final() {
    const int k = st_.num_demands();
    for (int i = 0; i < k; ++i) {
      GCOVER_CHECK(covered(i, in_fp_), "demand left uncut");
    }
    structure_.add("demands-cut", true);
    std::string detail;
    for (int i : processed_) {
      if (detail.empty() && !one_per_side(i, in_fp_)) {
        detail = "demand " + std::to_string(order_[i]) + " has two cut edges on one side";
      }
    }
    structure_.add("one-edge-per-side", detail.empty(), detail);
    detail.clear();
    for (int i : processed_) {
      for (int v : st_.path_nodes(i)) {
        if (!detail.empty() || sgn(st_.mu(v, i)) <= 0) continue;
        bool touched = false;
        bool own = false;
        for (int e : g_.incident(v)) {
          if (!in_fp_[e]) continue;
          touched = true;
          if (st_.on_path(e, i)) own = true;
        }
        if (touched && !own) {
          detail = "node " + std::to_string(v) + " charged by demand " +
                   std::to_string(order_[i]) + " has no cut edge of that demand";
        }
      }
    }
    structure_.add("charged-nodes-own-edge", detail.empty(), detail);
    structure_.add("growing-set-bottleneck", bottleneck_detail_.empty(), bottleneck_detail_);
    structure_.add("bottleneck-edges-found", missing_detail_.empty(), missing_detail_);
  }

  const MulticutInstance& inst_;
  MulticutState st_;
  const Graph& g_;
  const RootedTree& t_;
  std::vector<bool> in_f_;
  std::vector<bool> in_fp_;
  std::vector<bool> in_w_;
  std::vector<int> witness_;
  std::vector<int> processed_;
  std::vector<int> order_;  // position -> demand index of the caller
  std::string bottleneck_detail_;
  std::string missing_detail_;
  VerificationReport structure_;
  int lp_steps_ = 0;
};

}  // namespace

MulticutResult solve_multicut_tree(const MulticutInstance& inst) {
  const PrizeCollectingReduction red = reduce_prize_collecting(inst);
  const MulticutInstance& base = red.reduced;
  const RootedTree tree = base.tree();
  const int k = static_cast<int>(base.demands.size());

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> lca_depth(k);
  for (int i = 0; i < k; ++i) {
    lca_depth[i] = tree.depth(tree.lca(base.demands[i].s, base.demands[i].t));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lca_depth[a] > lca_depth[b]; });
  MulticutInstance sorted = base;
  for (int pos = 0; pos < k; ++pos) sorted.demands[pos] = base.demands[order[pos]];

  MulticutSolver solver(sorted, order);
  solver.run();
  const MulticutState& st = solver.state();

  MulticutResult res;
  res.dual.xi.assign(k, 0);
  res.witness.assign(k, -1);
  for (int pos = 0; pos < k; ++pos) {
    const int i = order[pos];
    res.dual.xi[i] = st.xi(pos);
    res.witness[i] = solver.witness()[pos];
    for (int e : st.path_edges(pos)) {
      if (Rational x = st.nu(e, pos); sgn(x) != 0) res.dual.nu[{e, i}] = x;
    }
    for (int v : st.path_nodes(pos)) {
      if (Rational x = st.mu(v, pos); sgn(x) != 0) res.dual.mu[{v, i}] = x;
    }
  }
  for (int pos : solver.processed()) res.processed.push_back(order[pos]);
  res.reduced_edges = solver.chosen();
  res.lp_steps = solver.lp_steps();
  res.structure = solver.structure();

  std::vector<int> original;
  for (int e : res.reduced_edges) {
    if (e < red.original_edges) original.push_back(e);
  }
  res.solution = evaluate_multicut(inst, original);
  const Rational sum = res.dual.sum();
  res.ratio = sgn(sum) == 0 ? Rational(1) : res.solution.total.finite() / sum;
  return res;
}

VerificationReport verify_multicut(const MulticutInstance& inst,
                                   const std::vector<int>& reduced_edges,
                                   const MulticutDual& dual) {
  VerificationReport report;
  const PrizeCollectingReduction red = reduce_prize_collecting(inst);
  const MulticutInstance& base = red.reduced;
  const Graph& g = base.graph;
  const int k = static_cast<int>(base.demands.size());

  bool ids_ok = std::all_of(reduced_edges.begin(), reduced_edges.end(),
                            [&](int e) { return e >= 0 && e < g.num_edges(); });
  report.add("edge-ids-valid", ids_ok, "chosen edge id out of range");
  if (!ids_ok) return report;

  const auto uncut = uncovered_demands(base, reduced_edges);
  report.add("demands-cut", uncut.empty(),
             uncut.empty() ? "" : "demand " + std::to_string(uncut.front()) + " is not cut");

  MulticutState st(base);
  std::string bad;
  if (static_cast<int>(dual.xi.size()) != k) {
    bad = "expected " + std::to_string(k) + " demand values";
  } else {
    for (int i = 0; i < k; ++i) st.set_xi(i, dual.xi[i]);
    for (const auto& [key, x] : dual.nu) {
      const auto [e, i] = key;
      if (i < 0 || i >= k || e < 0 || e >= g.num_edges() || !st.on_path(e, i)) {
        bad = "nu entry for edge " + std::to_string(e) + " off its demand path";
        break;
      }
      st.set_nu(e, i, x);
    }
    for (const auto& [key, x] : dual.mu) {
      const auto [v, i] = key;
      if (i < 0 || i >= k || v < 0 || v >= g.num_nodes() || !st.node_on_path(v, i)) {
        bad = "mu entry for node " + std::to_string(v) + " off its demand path";
        break;
      }
      st.set_mu(v, i, x);
    }
    if (bad.empty() && !st.feasible()) bad = "dual constraint violated";
  }
  report.add("dual-feasible", bad.empty(), bad);
  if (!bad.empty()) return report;

  const Solution cut = evaluate_multicut(base, reduced_edges);
  const Rational cost = cut.edge_weight + cut.node_weight;
  const Rational sum = dual.sum();
  report.add("cost-within-twice-dual", cost <= 2 * sum,
             "cost " + to_string(cost) + " exceeds 2 * " + to_string(sum));

  std::string sat;
  std::vector<bool> touched(g.num_nodes(), false);
  for (int e : cut.edges) {
    touched[g.edge(e).u] = touched[g.edge(e).v] = true;
    if (!st.edge_saturated(e)) sat = "edge " + std::to_string(e) + " not saturated";
  }
  for (int v = 0; v < g.num_nodes() && sat.empty(); ++v) {
    if (touched[v] && !st.node_saturated(v)) {
      sat = "node " + std::to_string(v) + " not saturated";
    }
  }
  for (int e : red.big_m_edge) {
    if (e >= 0 && std::binary_search(cut.edges.begin(), cut.edges.end(), e)) {
      sat = "big-M edge " + std::to_string(e) + " chosen";
    }
  }
  report.add("cut-saturated", sat.empty(), sat);
  return report;
}

}  // namespace gcover
