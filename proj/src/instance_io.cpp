#include "gcover/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "gcover/errors.hpp"

namespace gcover {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

struct RawEdge {
  int u, v;
  Rational weight;
  std::optional<ExtRat> penalty;
  int line;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Instance run() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      auto end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_;
      const auto toks = tokenize(text_.substr(start, end - start));
      if (!toks.empty()) directive(toks);
      start = end + 1;
    }
    if (!kind_) fail(0, "missing 'problem' line");
    return build();
  }

 private:
  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError(line, msg);
  }

  void arity(const std::vector<std::string>& t, std::size_t lo,
             std::size_t hi) const {
    if (t.size() < lo || t.size() > hi) {
      fail(line_, "wrong number of fields for '" + t[0] + "'");
    }
  }

  Rational weight(const std::string& tok) const {
    if (tok == "inf" || tok == "+inf") fail(line_, "weight cannot be inf");
    Rational q;
    try {
      q = parse_rational(tok);
    } catch (const UsageError& e) {
      fail(line_, e.what());
    }
    if (sgn(q) < 0) fail(line_, "negative value " + tok);
    return q;
  }

  ExtRat ext(const std::string& tok) const {
    if (tok == "inf" || tok == "+inf") return ExtRat::infinity();
    return ExtRat(weight(tok));
  }

  int integer(const std::string& tok) const {
    try {
      const Rational q = parse_rational(tok);
      if (q.get_den() != 1 || !q.get_num().fits_sint_p()) throw UsageError("");
      return static_cast<int>(q.get_num().get_si());
    } catch (const UsageError&) {
      fail(line_, "expected an integer, got '" + tok + "'");
    }
  }

  int node(const std::string& tok) const {
    if (!nodes_) fail(line_, "'nodes' must precede node references");
    const int v = integer(tok);
    if (v < 0 || v >= *nodes_) fail(line_, "unknown node id " + tok);
    return v;
  }

  void require(bool ok, const std::string& keyword) const {
    if (!ok) {
      fail(line_, "'" + keyword + "' is not valid for problem " +
                      to_string(*kind_));
    }
  }

  bool is_graph_problem() const {
    return *kind_ == ProblemKind::kEdsTree || *kind_ == ProblemKind::kEdsGeneral ||
           *kind_ == ProblemKind::kMulticutTree;
  }
  bool is_tree_problem() const {
    return *kind_ == ProblemKind::kEdsTree || *kind_ == ProblemKind::kMulticutTree;
  }

  void directive(const std::vector<std::string>& t) {
    const std::string& key = t[0];
    if (key == "problem") {
      arity(t, 2, 2);
      if (kind_) fail(line_, "duplicate 'problem' line");
      try {
        kind_ = parse_problem_kind(t[1]);
      } catch (const UsageError& e) {
        fail(line_, e.what());
      }
      return;
    }
    if (!kind_) fail(line_, "'problem' must be the first directive");
    if (key == "root") {
      arity(t, 2, 2);
      require(is_tree_problem(), key);
      root_line_ = line_;
      root_ = integer(t[1]);
    } else if (key == "nodes") {
      arity(t, 2, 2);
      require(*kind_ != ProblemKind::kFacilityLocation, key);
      if (nodes_) fail(line_, "duplicate 'nodes' line");
      const int n = integer(t[1]);
      if (n < 0) fail(line_, "negative node count");
      nodes_ = n;
      nodes_line_ = line_;
      node_weight_.assign(n, Rational(0));
      node_seen_.assign(n, false);
    } else if (key == "node") {
      arity(t, 3, 3);
      require(is_graph_problem(), key);
      const int v = node(t[1]);
      if (node_seen_[v]) fail(line_, "duplicate node " + t[1]);
      node_seen_[v] = true;
      node_weight_[v] = weight(t[2]);
    } else if (key == "edge") {
      require(is_graph_problem(), key);
      const bool eds = *kind_ != ProblemKind::kMulticutTree;
      arity(t, eds ? 5 : 4, eds ? 5 : 4);
      RawEdge e{node(t[1]), node(t[2]), weight(t[3]), std::nullopt, line_};
      if (e.u == e.v) fail(line_, "self-loop");
      if (eds) e.penalty = ext(t[4]);
      const auto key_pair = std::minmax(e.u, e.v);
      if (!edge_keys_.insert({key_pair, line_}).second) {
        fail(line_, "duplicate edge");
      }
      edges_.push_back(std::move(e));
    } else if (key == "demand") {
      arity(t, 4, 4);
      require(*kind_ == ProblemKind::kMulticutTree, key);
      Demand d{node(t[1]), node(t[2]), ext(t[3])};
      if (d.s == d.t) fail(line_, "demand endpoints coincide");
      demands_.push_back(d);
    } else if (key == "set") {
      arity(t, 3, t.size() < 3 ? 3 : t.size());
      require(*kind_ == ProblemKind::kSetCover, key);
      CoverSet s;
      s.cost = weight(t[1]);
      for (std::size_t i = 2; i < t.size(); ++i) s.members.push_back(node(t[i]));
      std::sort(s.members.begin(), s.members.end());
      if (std::adjacent_find(s.members.begin(), s.members.end()) !=
          s.members.end()) {
        fail(line_, "repeated set member");
      }
      sets_.push_back(std::move(s));
    } else if (key == "facility") {
      arity(t, 3, 3);
      require(*kind_ == ProblemKind::kFacilityLocation, key);
      const int f = integer(t[1]);
      if (f < 0 || facilities_.count(f)) fail(line_, "bad facility id " + t[1]);
      facilities_[f] = weight(t[2]);
    } else if (key == "client") {
      arity(t, 2, 2);
      require(*kind_ == ProblemKind::kFacilityLocation, key);
      const int c = integer(t[1]);
      if (c < 0 || clients_.count(c)) fail(line_, "bad client id " + t[1]);
      clients_.insert({c, line_});
    } else if (key == "conn") {
      arity(t, 4, 4);
      require(*kind_ == ProblemKind::kFacilityLocation, key);
      const int c = integer(t[1]);
      const int f = integer(t[2]);
      if (!clients_.count(c)) fail(line_, "unknown client " + t[1]);
      if (!facilities_.count(f)) fail(line_, "unknown facility " + t[2]);
      if (!conn_.insert({{c, f}, ext(t[3])}).second) {
        fail(line_, "duplicate connection");
      }
    } else {
      fail(line_, "unknown directive '" + key + "'");
    }
  }

  Graph build_graph(bool tree) {
    std::vector<Edge> edges;
    for (const RawEdge& e : edges_) edges.push_back({e.u, e.v});
    if (!tree) return Graph(*nodes_, std::move(edges));
    DisjointSets dsu(*nodes_);
    for (const RawEdge& e : edges_) {
      if (!dsu.unite(e.u, e.v)) fail(e.line, "edge closes a cycle");
    }
    if (static_cast<int>(edges_.size()) != std::max(*nodes_ - 1, 0)) {
      fail(nodes_line_, "tree is disconnected");
    }
    if (root_ < 0 || root_ >= *nodes_) fail(root_line_, "root is not a node");
    return Graph(*nodes_, std::move(edges));
  }

  // Reorders raw edges by child id, oriented parent -> child.
  void canonicalize_tree(const Graph& g) {
    const RootedTree t(g, root_);
    std::vector<RawEdge> out;
    for (int v = 0; v < *nodes_; ++v) {
      if (v == root_) continue;
      RawEdge e = edges_[t.parent_edge(v)];
      e.u = t.parent(v);
      e.v = v;
      out.push_back(std::move(e));
    }
    edges_ = std::move(out);
  }

  Instance build() {
    const ProblemKind kind = *kind_;
    if (kind == ProblemKind::kFacilityLocation) return build_facility_location();
    if (!nodes_) fail(0, "missing 'nodes' line");
    if (kind == ProblemKind::kSetCover) {
      SetCoverInstance sc{*nodes_, sets_};
      return sc;
    }
    const bool tree = is_tree_problem();
    Graph g = build_graph(tree);
    if (tree && *nodes_ > 0) {
      canonicalize_tree(g);
      g = build_graph(true);
    }
    std::vector<Rational> ew;
    for (const RawEdge& e : edges_) ew.push_back(e.weight);
    if (kind == ProblemKind::kMulticutTree) {
      MulticutInstance mc{std::move(g), root_, node_weight_, std::move(ew),
                          demands_};
      return mc;
    }
    EdsInstance eds;
    eds.graph = std::move(g);
    if (tree) eds.root = root_;
    eds.node_weight = node_weight_;
    eds.edge_weight = std::move(ew);
    for (const RawEdge& e : edges_) eds.penalty.push_back(*e.penalty);
    return eds;
  }

  Instance build_facility_location() {
    // Ids must be dense 0..k-1 so that serialization round-trips.
    FacilityLocationInstance fl;
    int expect = 0;
    for (const auto& [f, cost] : facilities_) {
      if (f != expect++) fail(0, "facility ids must be 0..k-1");
      fl.opening.push_back(cost);
    }
    expect = 0;
    for (const auto& [c, line] : clients_) {
      if (c != expect++) fail(line, "client ids must be 0..k-1");
    }
    fl.connection.assign(clients_.size(), std::vector<ExtRat>(
                                              facilities_.size(),
                                              ExtRat::infinity()));
    for (const auto& [key, cost] : conn_) {
      fl.connection[key.first][key.second] = cost;
    }
    return fl;
  }

  std::string_view text_;
  int line_ = 0;
  std::optional<ProblemKind> kind_;
  std::optional<int> nodes_;
  int nodes_line_ = 0;
  int root_ = 0;
  int root_line_ = 0;
  std::vector<Rational> node_weight_;
  std::vector<bool> node_seen_;
  std::vector<RawEdge> edges_;
  std::map<std::pair<int, int>, int> edge_keys_;
  std::vector<Demand> demands_;
  std::vector<CoverSet> sets_;
  std::map<int, Rational> facilities_;
  std::map<int, int> clients_;
  std::map<std::pair<int, int>, ExtRat> conn_;
};

void write_graph_part(std::ostream& os, const Graph& g,
                      const std::vector<Rational>& nw) {
  os << "nodes " << g.num_nodes() << "\n";
  for (int v = 0; v < g.num_nodes(); ++v) {
    os << "node " << v << " " << to_string(nw[v]) << "\n";
  }
}

}  // namespace

Instance parse_instance(std::string_view text) { return Parser(text).run(); }

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "problem " << to_string(kind_of(inst)) << "\n";
  if (const auto* eds = std::get_if<EdsInstance>(&inst)) {
    if (eds->root) os << "root " << *eds->root << "\n";
    write_graph_part(os, eds->graph, eds->node_weight);
    for (int e = 0; e < eds->graph.num_edges(); ++e) {
      const Edge& ed = eds->graph.edge(e);
      os << "edge " << ed.u << " " << ed.v << " "
         << to_string(eds->edge_weight[e]) << " " << to_string(eds->penalty[e])
         << "\n";
    }
  } else if (const auto* mc = std::get_if<MulticutInstance>(&inst)) {
    os << "root " << mc->root << "\n";
    write_graph_part(os, mc->graph, mc->node_weight);
    for (int e = 0; e < mc->graph.num_edges(); ++e) {
      const Edge& ed = mc->graph.edge(e);
      os << "edge " << ed.u << " " << ed.v << " "
         << to_string(mc->edge_weight[e]) << "\n";
    }
    for (const Demand& d : mc->demands) {
      os << "demand " << d.s << " " << d.t << " " << to_string(d.penalty)
         << "\n";
    }
  } else if (const auto* sc = std::get_if<SetCoverInstance>(&inst)) {
    os << "nodes " << sc->ground_size << "\n";
    for (const CoverSet& s : sc->sets) {
      os << "set " << to_string(s.cost);
      for (int m : s.members) os << " " << m;
      os << "\n";
    }
  } else {
    const auto& fl = std::get<FacilityLocationInstance>(inst);
    for (int f = 0; f < fl.num_facilities(); ++f) {
      os << "facility " << f << " " << to_string(fl.opening[f]) << "\n";
    }
    for (int c = 0; c < fl.num_clients(); ++c) os << "client " << c << "\n";
    for (int c = 0; c < fl.num_clients(); ++c) {
      for (int f = 0; f < fl.num_facilities(); ++f) {
        if (fl.connection[c][f].is_finite()) {
          os << "conn " << c << " " << f << " "
             << to_string(fl.connection[c][f]) << "\n";
        }
      }
    }
  }
  return os.str();
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << serialize_instance(inst);
}

}  // namespace gcover
