#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcover/instance.hpp"
#include "gcover/lp.hpp"

namespace gcover {

enum class RelaxationKind { kNatural, kStrengthened, kEdgeCover };

const char* to_string(RelaxationKind kind);
RelaxationKind parse_relaxation_kind(const std::string& name);

// A built LP together with the variable ids of its named quantities.
// Variable order: x(e) by edge, x(v) by node, then per demand C its z(C)
// (absent when the penalty is +inf) followed by y(C, e) for e in C.
struct Relaxation {
  lp::LpModel model;
  std::vector<std::vector<int>> demand_sets;  // C, ascending edge ids
  std::vector<int> x_edge;
  std::vector<int> x_node;
  std::vector<int> z;                           // -1 when fixed to 0
  std::vector<std::vector<int>> y;              // parallel to demand_sets
};

// EDS demands are the closed edge neighbourhoods; multicut demands are the
// demand paths. kEdgeCover is only valid for EdgeCoverInstance and the
// others only for EDS/multicut; mismatches throw UsageError.
Relaxation build_relaxation(const EdsInstance& inst, RelaxationKind kind);
Relaxation build_relaxation(const MulticutInstance& inst, RelaxationKind kind);
Relaxation build_relaxation(const EdgeCoverInstance& inst, RelaxationKind kind);

// Demand families, in edge / demand index order.
std::vector<std::vector<int>> eds_demand_sets(const Graph& g);
std::vector<std::vector<int>> multicut_demand_sets(const MulticutInstance& inst);

// Dual variables completing an EDS certificate xi. nu is keyed by
// (e', e) with e' in the neighbourhood of e, mu by (v, e) with v an end
// node of some edge in that neighbourhood. Only entries for xi(e) > 0 are
// present; absent entries are 0.
struct EdsDualCompletion {
  std::map<std::pair<int, int>, Rational> nu;
  std::map<std::pair<int, int>, Rational> mu;
};

// Solves the dual-completion feasibility problem exactly. Returns nullopt
// when no completion exists. Throws UsageError when some xi(e) is negative
// or exceeds its penalty.
std::optional<EdsDualCompletion> complete_eds_dual(
    const EdsInstance& inst, const std::vector<Rational>& xi);

// Independent check of a completion against the dual constraints.
bool check_eds_dual(const EdsInstance& inst, const std::vector<Rational>& xi,
                    const EdsDualCompletion& completion);

}  // namespace gcover
