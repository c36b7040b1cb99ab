#pragma once

#include <vector>

#include "gcover/instance.hpp"
#include "gcover/report.hpp"

namespace gcover {

// Optimal point of the strengthened relaxation of an EDS instance, reduced
// so that x(e) = max_C y(C, e). z is 0 where the penalty is +inf.
struct EdsLpPoint {
  Rational value;
  std::vector<Rational> x_edge;
  std::vector<Rational> x_node;
  std::vector<Rational> z;  // per edge demand
};

EdsLpPoint solve_eds_relaxation(const EdsInstance& inst);

// Edge cover instance (G, U, w) obtained by thresholding x, and the
// equivalent instance with w(U) = 0 and every U-U edge subdivided.
struct EdgeCoverBuild {
  EdgeCoverInstance thresholded;
  EdgeCoverInstance reduced;
  // Reduced edge -> original edge. Both halves of a subdivided edge map
  // to the edge they replace.
  std::vector<int> origin_edge;
};

// U = {v : sum of x(e) over incident edges >= 1/4}.
EdgeCoverBuild build_edge_cover_instance(const EdsInstance& inst,
                                         const std::vector<Rational>& x_edge);

struct FacilityLocationResult {
  std::vector<int> open;        // ascending facility ids
  std::vector<int> assignment;  // per client, -1 when unassignable
  ExtRat cost;
};

// Greedy by best cost per newly served client. A facility that is already
// open costs nothing in later stars. Ties go to the lower facility, then
// the shorter prefix. Clients with only +inf connections end up on the
// lowest facility at cost +inf.
FacilityLocationResult greedy_facility_location(
    const FacilityLocationInstance& fl);

struct EdsGeneralResult {
  Solution solution;
  EdsLpPoint lp;
  std::vector<int> demand_nodes;  // U, ascending
  Rational factor;                // 4 * H(|V|)
  Rational ec_thresholded;        // EC of (G, U, w)
  Rational lp_cost_terms;         // sum w(e)x(e) + sum w(v)x(v)
  Rational ec_reduced;            // EC of the facility location encoding
  Rational greedy_cost;
  int num_clients = 0;
  Rational penalty_budget;        // 2 * sum pi(e) z(e) over finite pi
  VerificationReport bounds;
};

// LP rounding to edge cover followed by greedy facility location. Throws
// UsageError for invalid instances.
EdsGeneralResult solve_eds_general(const EdsInstance& inst);

// Re-solves the relaxation and checks that `edges` dominate every edge
// with +inf penalty and cost at most factor * P(I).
VerificationReport verify_eds_general(const EdsInstance& inst,
                                      const std::vector<int>& edges,
                                      const Rational& lower_bound);

}  // namespace gcover
