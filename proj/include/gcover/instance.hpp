#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gcover/graph.hpp"
#include "gcover/rational.hpp"

namespace gcover {

enum class ProblemKind {
  kEdsTree,
  kMulticutTree,
  kEdsGeneral,
  kSetCover,
  kFacilityLocation,
};

const char* to_string(ProblemKind kind);
// Throws UsageError for an unknown name.
ProblemKind parse_problem_kind(const std::string& name);

// Prize-collecting edge dominating set. Demand of edge e is its closed
// neighbourhood; penalty[e] is paid when no chosen edge touches e.
struct EdsInstance {
  Graph graph;
  std::optional<int> root;  // set for tree instances
  std::vector<Rational> node_weight;
  std::vector<Rational> edge_weight;
  std::vector<ExtRat> penalty;

  bool is_tree() const { return root.has_value(); }
  RootedTree tree() const { return RootedTree(graph, *root); }
  friend bool operator==(const EdsInstance&, const EdsInstance&) = default;
};

struct Demand {
  int s;
  int t;
  ExtRat penalty;
  friend bool operator==(const Demand&, const Demand&) = default;
};

struct MulticutInstance {
  Graph graph;
  int root = 0;
  std::vector<Rational> node_weight;
  std::vector<Rational> edge_weight;
  std::vector<Demand> demands;

  RootedTree tree() const { return RootedTree(graph, root); }
  friend bool operator==(const MulticutInstance&,
                         const MulticutInstance&) = default;
};

struct CoverSet {
  Rational cost;
  std::vector<int> members;  // ascending, distinct
  friend bool operator==(const CoverSet&, const CoverSet&) = default;
};

struct SetCoverInstance {
  int ground_size = 0;
  std::vector<CoverSet> sets;
  friend bool operator==(const SetCoverInstance&,
                         const SetCoverInstance&) = default;
};

// Clients and facilities are numbered independently from 0. A missing
// connection is +inf.
struct FacilityLocationInstance {
  std::vector<Rational> opening;               // per facility
  std::vector<std::vector<ExtRat>> connection;  // [client][facility]

  int num_clients() const { return static_cast<int>(connection.size()); }
  int num_facilities() const { return static_cast<int>(opening.size()); }
  friend bool operator==(const FacilityLocationInstance&,
                         const FacilityLocationInstance&) = default;
};

// Edge cover restricted to a demand node set: every node in `demand` must
// be touched by a chosen edge.
struct EdgeCoverInstance {
  Graph graph;
  std::vector<bool> demand;
  std::vector<Rational> node_weight;
  std::vector<Rational> edge_weight;
};

using Instance = std::variant<EdsInstance, MulticutInstance, SetCoverInstance,
                              FacilityLocationInstance>;

ProblemKind kind_of(const Instance& inst);

// Throws UsageError on size mismatches, negative weights, infinite-free
// violations or out-of-range ids.
void validate(const EdsInstance& inst);
void validate(const MulticutInstance& inst);
void validate(const SetCoverInstance& inst);
void validate(const FacilityLocationInstance& inst);

// Chosen edge set together with its cost breakdown.
struct Solution {
  std::vector<int> edges;  // ascending
  Rational edge_weight;
  Rational node_weight;
  ExtRat penalty;
  ExtRat total;
};

// Evaluate a chosen edge set; edges are sorted and deduplicated.
Solution evaluate_eds(const EdsInstance& inst, std::vector<int> edges);
Solution evaluate_multicut(const MulticutInstance& inst,
                           std::vector<int> edges);
// Returns true when every demand node is touched.
bool covers(const EdgeCoverInstance& inst, const std::vector<int>& edges);
Rational edge_cover_cost(const EdgeCoverInstance& inst,
                         const std::vector<int>& edges);

// Which demands the edge set leaves uncovered (in demand/edge index order).
std::vector<int> uncovered_eds_edges(const EdsInstance& inst,
                                     const std::vector<int>& edges);
std::vector<int> uncovered_demands(const MulticutInstance& inst,
                                   const std::vector<int>& edges);

}  // namespace gcover
