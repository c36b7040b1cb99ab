#include "gcover/graph.hpp"

#include <algorithm>

#include "gcover/errors.hpp"

namespace gcover {

Graph::Graph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), incident_(n) {
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n) {
      throw UsageError("edge " + std::to_string(e) + " has an unknown node");
    }
    if (ed.u == ed.v) {
      throw UsageError("edge " + std::to_string(e) + " is a self-loop");
    }
    incident_[ed.u].push_back(e);
    incident_[ed.v].push_back(e);
  }
}

std::vector<int> Graph::edge_neighbourhood(int e) const {
  const Edge& ed = edges_[e];
  std::vector<int> out = incident_[ed.u];
  out.insert(out.end(), incident_[ed.v].begin(), incident_[ed.v].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Graph::is_connected() const {
  if (n_ == 0) return true;
  std::vector<bool> seen(n_, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : incident_[v]) {
      const int w = edges_[e].other(v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

RootedTree::RootedTree(const Graph& g, int root) : root_(root) {
  const int n = g.num_nodes();
  if (root < 0 || root >= n) throw UsageError("root is not a node");
  if (g.num_edges() != n - 1 || !g.is_connected()) {
    throw UsageError("graph is not a tree");
  }
  parent_.assign(n, -1);
  depth_.assign(n, 0);
  children_.assign(n, {});
  parent_edge_.assign(n, -1);
  lower_.assign(g.num_edges(), -1);
  parent_[root] = root;
  std::vector<int> order{root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    for (int e : g.incident(v)) {
      const int w = g.edge(e).other(v);
      if (e == parent_edge_[v]) continue;
      parent_[w] = v;
      depth_[w] = depth_[v] + 1;
      parent_edge_[w] = e;
      lower_[e] = w;
      children_[v].push_back(w);
      order.push_back(w);
    }
  }
  for (auto& c : children_) std::sort(c.begin(), c.end());
}

int RootedTree::max_depth() const {
  return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

bool RootedTree::is_ancestor(int a, int v) const {
  while (depth_[v] > depth_[a]) v = parent_[v];
  return v == a;
}

int RootedTree::lca(int a, int b) const {
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

std::vector<int> RootedTree::path_edges(int a, int b) const {
  const int c = lca(a, b);
  std::vector<int> out;
  for (int v = a; v != c; v = parent_[v]) out.push_back(parent_edge_[v]);
  std::vector<int> tail;
  for (int v = b; v != c; v = parent_[v]) tail.push_back(parent_edge_[v]);
  out.insert(out.end(), tail.rbegin(), tail.rend());
  return out;
}

std::vector<int> canonical_tree_order(const Graph& g, int root) {
  const RootedTree t(g, root);
  std::vector<int> perm;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (v != root) perm.push_back(t.parent_edge(v));
  }
  return perm;
}

}  // namespace gcover
