#pragma once

#include "gcover/instance.hpp"

namespace gcover {

// Bipartite EDS encoding of facility location. Node layout: clients
// 0..C-1, facilities C..C+F-1, pendant copies C+F..2C+F-1. Edges: client
// c to facility f at index c*F+f, then the pendant edge of client c at
// C*F+c. Infinite weights are replaced by big_m.
struct EdsReduction {
  EdsInstance eds;
  Rational big_m;
  int num_clients = 0;
  int num_facilities = 0;

  // True when the objective can only be reached through a big-M element,
  // i.e. the source instance has no finite solution.
  bool big_m_dominated(const ExtRat& objective) const {
    return objective >= ExtRat(big_m);
  }
};

// d(v, f) = 0 when v belongs to set f, +inf otherwise; o(f) = cost(f).
FacilityLocationInstance as_facility_location(const SetCoverInstance& sc);

EdsReduction reduce_to_eds(const FacilityLocationInstance& fl);
EdsReduction reduce_to_eds(const SetCoverInstance& sc);

}  // namespace gcover
