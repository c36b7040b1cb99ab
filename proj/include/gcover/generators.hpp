#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcover/instance.hpp"

namespace gcover {

struct GenParams {
  int nodes = 6;       // tree/graph nodes, star leaves, or ground set size
  int edges = 8;       // random-graph-eds only
  int demands = 3;     // random-tree-multicut only
  int sets = 3;        // random-set-cover only
  int facilities = 2;  // random-facility-location only
  long weight_lo = 0;
  long weight_hi = 10;
  long penalty_lo = 0;
  long penalty_hi = 10;
  // Probability inf_num / inf_den that a penalty (or connection cost) is +inf.
  long inf_num = 1;
  long inf_den = 5;
};

// Kinds: random-tree-eds, random-tree-multicut, random-graph-eds,
// star-gap-eds, subdivided-star-multicut, random-set-cover,
// random-facility-location. Deterministic per seed on every platform.
Instance gen_instance(const std::string& kind, const GenParams& params,
                      std::uint64_t seed);
const std::vector<std::string>& generator_kinds();

// Star with n leaves around centre 0; centre weight 1, all else 0, all
// penalties +inf.
EdsInstance star_gap_eds(int n);
// n two-edge legs from centre 0 through subdivision node i to leaf n+i;
// subdivision nodes weigh 1, all else 0; every leaf pair is a demand with
// penalty +inf.
MulticutInstance subdivided_star_multicut(int n);

}  // namespace gcover
