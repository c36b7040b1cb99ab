#include "gcover/eds_tree.hpp"

#include <algorithm>
#include <tuple>

#include "gcover/errors.hpp"
#include "gcover/relaxation.hpp"

namespace gcover {

namespace {

// Fills ξ(e) for e in `edges` (ascending id) up to caps, reaching `target`.
void greedy_fill(const std::vector<int>& edges, const std::vector<ExtRat>& caps,
                 const Rational& target, std::vector<Rational>& xi) {
  Rational left = target;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Rational take = left;
    if (caps[i].is_finite() && caps[i].finite() < take) take = caps[i].finite();
    xi[edges[i]] = take;
    left -= take;
  }
  GCOVER_CHECK(sgn(left) == 0, "dual caps cannot reach the target");
}

class TreeSolver {
 public:
  explicit TreeSolver(const EdsInstance& inst)
      : g_(inst.graph), t_(inst.tree()), nw_(inst.node_weight),
        ew_(inst.edge_weight), pen_(inst.penalty),
        node_alive_(g_.num_nodes(), true), edge_alive_(g_.num_edges(), true),
        in_f_(g_.num_edges(), false), xi_(g_.num_edges()) {
    by_depth_.resize(t_.max_depth() + 1);
    for (int v = 0; v < g_.num_nodes(); ++v) by_depth_[t_.depth(v)].push_back(v);
    alive_count_.resize(by_depth_.size());
    for (std::size_t d = 0; d < by_depth_.size(); ++d) {
      alive_count_[d] = static_cast<int>(by_depth_[d].size());
    }
  }

  EdsTreeResult run() {
    EdsTreeResult res;
    std::vector<Frame> frames;
    while (max_depth() > 1) {
      const auto before = measure();
      Frame f;
      f.log_mark = log_.size();
      const int e = case_a_edge();
      if (e >= 0) {
        reduce_case_a(f, e);
        ++res.case_a_steps;
      } else {
        reduce_case_b(f);
        ++res.case_b_steps;
      }
      GCOVER_CHECK(measure() < before, "reduction did not shrink the instance");
      check_weights();
      frames.push_back(std::move(f));
    }
    base_case();
    ++res.base_steps;
    check_level();
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      undo_to(it->log_mark);
      if (it->tag == Tag::kA) lift_case_a(*it);
      else lift_case_b(*it);
      check_level();
    }
    std::vector<int> edges;
    for (int e = 0; e < g_.num_edges(); ++e) {
      if (in_f_[e]) edges.push_back(e);
    }
    res.solution = evaluate_eds(EdsInstance{g_, t_.root(), nw_, ew_, pen_}, edges);
    res.xi = xi_;
    return res;
  }

 private:
  enum class Tag { kA, kB };

  struct Frame {
    Tag tag = Tag::kA;
    std::size_t log_mark = 0;
    // Shared: centre node (u in Case A, s in Case B), its parent and
    // parent edge (-1 when absent), the child nodes and child edges.
    int centre = -1;
    int up_node = -1;
    int up_edge = -1;
    std::vector<int> kids;
    std::vector<int> kid_edges;
    Rational first;     // β₁ / θ₁
    ExtRat second;      // β₂ / θ₂
    Rational step;      // β / θ
    int star_edge = -1; // e_{i*}
    Rational w_centre;  // w(u) / w(s) before reweighting
    Rational w_up_edge; // w(e₀) before reweighting
    // Case B only.
    std::vector<ExtRat> caps;
    std::vector<int> h_edges;  // all H edges, ascending
    std::vector<int> k_edges;  // h_i for i in K
  };

  enum class Field { kNodeWeight, kEdgeWeight, kPenalty, kNodeAlive, kEdgeAlive };
  struct LogEntry {
    Field field;
    int index;
    Rational old_rational;
    ExtRat old_ext;
  };

  // --- mutation with undo ---------------------------------------------

  void set_node_weight(int v, Rational w) {
    log_.push_back({Field::kNodeWeight, v, nw_[v], {}});
    nw_[v] = std::move(w);
  }
  void set_edge_weight(int e, Rational w) {
    log_.push_back({Field::kEdgeWeight, e, ew_[e], {}});
    ew_[e] = std::move(w);
  }
  void set_penalty(int e, ExtRat p) {
    log_.push_back({Field::kPenalty, e, {}, pen_[e]});
    pen_[e] = std::move(p);
  }
  void kill_node(int v) {
    log_.push_back({Field::kNodeAlive, v, {}, {}});
    node_alive_[v] = false;
    --alive_count_[t_.depth(v)];
  }
  void kill_edge(int e) {
    log_.push_back({Field::kEdgeAlive, e, {}, {}});
    edge_alive_[e] = false;
  }

  void undo_to(std::size_t mark) {
    while (log_.size() > mark) {
      LogEntry& le = log_.back();
      switch (le.field) {
        case Field::kNodeWeight: nw_[le.index] = le.old_rational; break;
        case Field::kEdgeWeight: ew_[le.index] = le.old_rational; break;
        case Field::kPenalty: pen_[le.index] = le.old_ext; break;
        case Field::kNodeAlive:
          node_alive_[le.index] = true;
          ++alive_count_[t_.depth(le.index)];
          break;
        case Field::kEdgeAlive: edge_alive_[le.index] = true; break;
      }
      log_.pop_back();
    }
  }

  // --- structure queries ------------------------------------------------

  int max_depth() const {
    for (int d = static_cast<int>(alive_count_.size()) - 1; d >= 0; --d) {
      if (alive_count_[d] > 0) return d;
    }
    return 0;
  }

  std::vector<int> alive_children(int v) const {
    std::vector<int> out;
    for (int c : t_.children(v)) {
      if (node_alive_[c]) out.push_back(c);
    }
    return out;
  }

  // Alive nodes at maximum depth (all of them are leaves), ascending.
  std::vector<int> deepest() const {
    std::vector<int> out;
    for (int v : by_depth_[max_depth()]) {
      if (node_alive_[v]) out.push_back(v);
    }
    return out;
  }

  std::pair<int, int> measure() const {
    int deep = 0;
    for (std::size_t d = 2; d < alive_count_.size(); ++d) deep += alive_count_[d];
    int positive = 0;
    if (max_depth() >= 1) {
      for (int v : deepest()) {
        if (pen_[t_.parent_edge(v)] > ExtRat(0)) ++positive;
      }
    }
    return {deep, positive};
  }

  // Lowest-id maximum-depth leaf edge with positive penalty, or -1.
  int case_a_edge() const {
    int best = -1;
    for (int v : deepest()) {
      const int e = t_.parent_edge(v);
      if (pen_[e] > ExtRat(0) && (best < 0 || e < best)) best = e;
    }
    return best;
  }

  bool touches_f(int v) const {
    for (int e : g_.incident(v)) {
      if (in_f_[e]) return true;
    }
    return false;
  }
  int f_degree(int v) const {
    int d = 0;
    for (int e : g_.incident(v)) d += in_f_[e] ? 1 : 0;
    return d;
  }

  // --- the three cases ----------------------------------------------------

  void base_case() {
    const int r = t_.root();
    std::vector<int> edges;
    for (int e : g_.incident(r)) {
      if (edge_alive_[e]) edges.push_back(e);
    }
    if (edges.empty()) return;
    Rational alpha1;
    int star = -1;
    ExtRat alpha2(0);
    for (int e : edges) {
      const Rational c = ew_[e] + nw_[r] + nw_[g_.edge(e).other(r)];
      if (star < 0 || c < alpha1) {
        alpha1 = c;
        star = e;
      }
      alpha2 += pen_[e];
    }
    if (ExtRat(alpha1) >= alpha2) {
      for (int e : edges) xi_[e] = pen_[e].finite();
      return;
    }
    in_f_[star] = true;
    std::vector<ExtRat> caps;
    for (int e : edges) caps.push_back(pen_[e]);
    greedy_fill(edges, caps, alpha1, xi_);
  }

  void reduce_case_a(Frame& f, int leaf_edge) {
    f.tag = Tag::kA;
    const int u = t_.upper(leaf_edge);
    f.centre = u;
    f.up_node = t_.parent(u);
    f.up_edge = t_.parent_edge(u);
    f.kids = alive_children(u);
    for (int v : f.kids) f.kid_edges.push_back(t_.parent_edge(v));
    f.w_centre = nw_[u];
    f.w_up_edge = ew_[f.up_edge];

    // Indices 0..k with 0 the parent side.
    std::vector<int> nodes{f.up_node};
    std::vector<int> edges{f.up_edge};
    nodes.insert(nodes.end(), f.kids.begin(), f.kids.end());
    edges.insert(edges.end(), f.kid_edges.begin(), f.kid_edges.end());
    f.second = ExtRat(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Rational c = ew_[edges[i]] + nw_[u] + nw_[nodes[i]];
      if (f.star_edge < 0 || c < f.first ||
          (c == f.first && edges[i] < f.star_edge)) {
        f.first = c;
        f.star_edge = edges[i];
      }
      if (i > 0) f.second += pen_[edges[i]];
    }
    f.step = ExtRat(f.first) <= f.second ? f.first : f.second.finite();
    const bool keep = ExtRat(f.first) > f.second;

    const Rational& beta = f.step;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const int e = edges[i];
      const Rational over_e = positive_part(beta - nw_[u] - ew_[e]);
      set_node_weight(nodes[i], nw_[nodes[i]] - over_e);
      set_edge_weight(e, positive_part(ew_[e] - positive_part(beta - nw_[u])));
    }
    set_node_weight(u, positive_part(nw_[u] - beta));
    if (keep) {
      for (int e : f.kid_edges) set_penalty(e, ExtRat(0));
    } else {
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        kill_edge(f.kid_edges[i]);
        kill_node(f.kids[i]);
      }
      set_penalty(f.up_edge, ExtRat(0));
    }
  }

  void lift_case_a(const Frame& f) {
    const bool keep = ExtRat(f.first) > f.second;
    // Make |δ_F'(u)| <= 1 by dropping child edges, highest id first.
    for (auto it = f.kid_edges.rbegin(); it != f.kid_edges.rend(); ++it) {
      if (f_degree(f.centre) <= 1) break;
      in_f_[*it] = false;
    }
    if (touches_f(f.up_node) && f.step > f.w_centre + f.w_up_edge) {
      in_f_[f.up_edge] = true;
    } else if (!keep && !touches_f(f.centre)) {
      // When F' already holds e₀ every e_i is dominated and the reduced
      // weights of u, e₀, v₀ absorb exactly β.
      in_f_[f.star_edge] = true;
    }
    if (keep) {
      for (int e : f.kid_edges) xi_[e] = pen_[e].finite();
    } else {
      std::vector<ExtRat> caps;
      for (int e : f.kid_edges) caps.push_back(pen_[e]);
      greedy_fill(f.kid_edges, caps, f.first, xi_);
    }
  }

  void reduce_case_b(Frame& f) {
    f.tag = Tag::kB;
    const int s = t_.parent(t_.parent(deepest().front()));
    f.centre = s;
    if (s != t_.root()) {
      f.up_node = t_.parent(s);
      f.up_edge = t_.parent_edge(s);
      f.w_up_edge = ew_[f.up_edge];
    }
    f.w_centre = nw_[s];
    f.kids = alive_children(s);
    for (int v : f.kids) f.kid_edges.push_back(t_.parent_edge(v));

    f.second = ExtRat(0);
    std::vector<std::vector<int>> grandkids(f.kids.size());
    for (std::size_t i = 0; i < f.kids.size(); ++i) {
      const int ui = f.kids[i];
      const int ei = f.kid_edges[i];
      int h = -1;
      Rational best;
      for (int v : alive_children(ui)) {
        grandkids[i].push_back(v);
        const int he = t_.parent_edge(v);
        f.h_edges.push_back(he);
        const Rational c = ew_[he] + nw_[v];
        if (h < 0 || c < best || (c == best && he < h)) {
          h = he;
          best = c;
        }
      }
      ExtRat cap = pen_[ei];
      if (h >= 0) {
        const Rational full = nw_[ui] + best;
        if (ExtRat(full) <= pen_[ei]) f.k_edges.push_back(h);
        cap = min(cap, ExtRat(full));
      }
      f.caps.push_back(cap);
      f.second += cap;
    }
    std::sort(f.h_edges.begin(), f.h_edges.end());
    std::sort(f.k_edges.begin(), f.k_edges.end());

    std::vector<int> nodes;
    std::vector<int> edges;
    if (f.up_edge >= 0) {
      nodes.push_back(f.up_node);
      edges.push_back(f.up_edge);
    }
    nodes.insert(nodes.end(), f.kids.begin(), f.kids.end());
    edges.insert(edges.end(), f.kid_edges.begin(), f.kid_edges.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Rational c = ew_[edges[i]] + nw_[nodes[i]] + nw_[s];
      if (f.star_edge < 0 || c < f.first ||
          (c == f.first && edges[i] < f.star_edge)) {
        f.first = c;
        f.star_edge = edges[i];
      }
    }
    f.step = ExtRat(f.first) <= f.second ? f.first : f.second.finite();
    const bool keep = ExtRat(f.first) >= f.second;

    const Rational& theta = f.step;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const int e = edges[i];
      set_node_weight(nodes[i],
                      nw_[nodes[i]] - positive_part(theta - nw_[s] - ew_[e]));
      set_edge_weight(e, positive_part(ew_[e] - positive_part(theta - nw_[s])));
    }
    set_node_weight(s, positive_part(nw_[s] - theta));

    for (std::size_t i = 0; i < f.kids.size(); ++i) {
      for (int v : grandkids[i]) {
        kill_edge(t_.parent_edge(v));
        kill_node(v);
      }
    }
    if (keep) {
      for (int e : f.kid_edges) set_penalty(e, ExtRat(0));
    } else {
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        kill_edge(f.kid_edges[i]);
        kill_node(f.kids[i]);
      }
      if (f.up_edge >= 0) set_penalty(f.up_edge, ExtRat(0));
    }
  }

  int f_neighbourhood_size(int e) const {
    int count = 0;
    for (int x : g_.edge_neighbourhood(e)) count += in_f_[x] ? 1 : 0;
    return count;
  }

  void lift_case_b(const Frame& f) {
    const bool keep = ExtRat(f.first) >= f.second;
    const int s = f.centre;
    if (f.up_edge >= 0) {
      for (auto it = f.kid_edges.rbegin(); it != f.kid_edges.rend(); ++it) {
        if (f_neighbourhood_size(f.up_edge) <= 1) break;
        in_f_[*it] = false;
      }
      if (f_neighbourhood_size(f.up_edge) > 1) in_f_[f.up_edge] = false;
    } else {
      for (auto it = f.kid_edges.rbegin(); it != f.kid_edges.rend(); ++it) {
        if (f_degree(s) <= 1) break;
        in_f_[*it] = false;
      }
    }
    if (f.up_edge >= 0 && touches_f(f.up_node) &&
        f.step > f.w_centre + f.w_up_edge) {
      in_f_[f.up_edge] = true;
    } else if (touches_f(s)) {
      // F = F'
    } else if (keep) {
      for (int h : f.k_edges) in_f_[h] = true;
    } else {
      in_f_[f.star_edge] = true;
    }
    for (int h : f.h_edges) xi_[h] = 0;
    greedy_fill(f.kid_edges, f.caps, f.step, xi_);
  }

  // --- invariants -----------------------------------------------------------

  void check_weights() const {
    for (int v = 0; v < g_.num_nodes(); ++v) {
      GCOVER_CHECK(sgn(nw_[v]) >= 0, "reduced node weight is negative");
    }
    for (int e = 0; e < g_.num_edges(); ++e) {
      GCOVER_CHECK(sgn(ew_[e]) >= 0, "reduced edge weight is negative");
    }
  }

  // At the current level the objective of F equals the dual sum and every
  // dual value respects its penalty.
  void check_level() const {
    ExtRat objective(0);
    Rational dual = 0;
    std::vector<bool> touched(g_.num_nodes(), false);
    for (int e = 0; e < g_.num_edges(); ++e) {
      if (!in_f_[e]) continue;
      GCOVER_CHECK(edge_alive_[e], "solution uses a deleted edge");
      objective += ExtRat(ew_[e]);
      touched[g_.edge(e).u] = true;
      touched[g_.edge(e).v] = true;
    }
    for (int v = 0; v < g_.num_nodes(); ++v) {
      if (touched[v]) objective += ExtRat(nw_[v]);
    }
    for (int e = 0; e < g_.num_edges(); ++e) {
      if (!edge_alive_[e]) continue;
      if (!touched[g_.edge(e).u] && !touched[g_.edge(e).v]) objective += pen_[e];
      GCOVER_CHECK(sgn(xi_[e]) >= 0 && ExtRat(xi_[e]) <= pen_[e],
                   "dual value exceeds its penalty");
      dual += xi_[e];
    }
    GCOVER_CHECK(objective == ExtRat(dual),
                 "objective " + to_string(objective) + " differs from dual sum " +
                     to_string(dual));
  }

  const Graph& g_;
  RootedTree t_;
  std::vector<Rational> nw_;
  std::vector<Rational> ew_;
  std::vector<ExtRat> pen_;
  std::vector<bool> node_alive_;
  std::vector<bool> edge_alive_;
  std::vector<bool> in_f_;
  std::vector<Rational> xi_;
  std::vector<std::vector<int>> by_depth_;
  std::vector<int> alive_count_;
  std::vector<LogEntry> log_;
};

}  // namespace

EdsTreeResult solve_eds_tree(const EdsInstance& inst) {
  if (!inst.is_tree()) throw UsageError("solve_eds_tree needs a rooted tree");
  validate(inst);
  return TreeSolver(inst).run();
}

VerificationReport verify_eds_optimality(const EdsInstance& inst,
                                         const std::vector<int>& edges,
                                         const std::vector<Rational>& xi) {
  VerificationReport rep;
  validate(inst);
  const Solution sol = evaluate_eds(inst, edges);
  if (static_cast<int>(xi.size()) != inst.graph.num_edges()) {
    rep.add("dual-size", false, "certificate has the wrong number of entries");
    return rep;
  }
  Rational sum = 0;
  for (const Rational& x : xi) sum += x;
  rep.add("objective-equals-dual-sum", sol.total == ExtRat(sum),
          "objective " + to_string(sol.total) + " but dual sum " + to_string(sum));
  bool bounded = true;
  std::string which;
  for (std::size_t e = 0; e < xi.size(); ++e) {
    if (sgn(xi[e]) < 0 || ExtRat(xi[e]) > inst.penalty[e]) {
      bounded = false;
      which = "edge " + std::to_string(e) + " violates 0 <= xi <= penalty";
      break;
    }
  }
  rep.add("dual-within-penalty", bounded, which);
  if (bounded) {
    const auto completion = complete_eds_dual(inst, xi);
    rep.add("dual-completion-feasible", completion.has_value(),
            "no nu/mu satisfy the dual capacity and covering constraints");
  } else {
    rep.add("dual-completion-feasible", false, "skipped: dual values out of range");
  }
  return rep;
}

}  // namespace gcover
