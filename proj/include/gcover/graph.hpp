#pragma once

#include <algorithm>
#include <vector>

namespace gcover {

struct Edge {
  int u;
  int v;
  int other(int x) const { return x == u ? v : u; }
  bool has(int x) const { return x == u || x == v; }
};

// Simple undirected graph on nodes 0..n-1 with indexed edges.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Incident edge ids in ascending order.
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  // Closed neighbourhood of an edge: every edge sharing an endpoint with e,
  // including e itself, ascending.
  std::vector<int> edge_neighbourhood(int e) const;
  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_.size() == b.edges_.size() &&
           std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(),
                      [](const Edge& x, const Edge& y) {
                        return x.u == y.u && x.v == y.v;
                      });
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

// A tree viewed from a root. Edges keep their graph ids; each edge is
// identified with its lower (child) endpoint.
class RootedTree {
 public:
  RootedTree() = default;
  // Throws UsageError when the graph is not a tree.
  RootedTree(const Graph& g, int root);

  int num_nodes() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  int depth(int v) const { return depth_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int parent_edge(int v) const { return parent_edge_[v]; }
  int lower(int e) const { return lower_[e]; }
  int upper(int e) const { return parent_[lower_[e]]; }
  int max_depth() const;

  bool is_ancestor(int a, int v) const;  // reflexive
  int lca(int a, int b) const;
  // Edge ids on the tree path between a and b.
  std::vector<int> path_edges(int a, int b) const;

 private:
  int root_ = 0;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> children_;
  std::vector<int> parent_edge_;
  std::vector<int> lower_;
};

// Reorders tree edges so that edge i is the i-th non-root node in id order,
// oriented parent -> child. Returns the permutation new -> old.
std::vector<int> canonical_tree_order(const Graph& g, int root);

}  // namespace gcover
