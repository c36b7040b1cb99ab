#pragma once

#include <vector>

#include "gcover/instance.hpp"
#include "gcover/report.hpp"

namespace gcover {

struct EdsTreeResult {
  Solution solution;
  std::vector<Rational> xi;  // per edge; sums to the objective
  int base_steps = 0;
  int case_a_steps = 0;
  int case_b_steps = 0;
};

// Exact primal-dual algorithm for prize-collecting EDS on a rooted tree.
// Throws UsageError when the instance is not a tree instance.
EdsTreeResult solve_eds_tree(const EdsInstance& inst);

// Checks a certificate: sum of xi equals the objective of `edges`, xi is
// bounded by the penalties, and the dual completion LP is feasible.
VerificationReport verify_eds_optimality(const EdsInstance& inst,
                                         const std::vector<int>& edges,
                                         const std::vector<Rational>& xi);

}  // namespace gcover
