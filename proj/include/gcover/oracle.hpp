#pragma once

#include "gcover/instance.hpp"

namespace gcover {

inline constexpr int kDefaultOracleCap = 20;

// Exhaustive minimisers over all edge subsets. Ties resolve to the
// lexicographically smallest characteristic vector (edge 0 first). When no
// finite solution exists the empty set is returned with total +inf.
// Throws UsageError when the instance has more than `cap` edges.
Solution brute_force_eds(const EdsInstance& inst, int cap = kDefaultOracleCap);
Solution brute_force_multicut(const MulticutInstance& inst,
                              int cap = kDefaultOracleCap);

// Optimal values; +inf when some demand cannot be covered.
ExtRat brute_force_cover(const SetCoverInstance& inst,
                         int cap = kDefaultOracleCap);
ExtRat brute_force_cover(const EdgeCoverInstance& inst,
                         int cap = kDefaultOracleCap);
// Enumerates facility subsets; clients connect to their cheapest open
// facility.
ExtRat brute_force_facility_location(const FacilityLocationInstance& inst,
                                     int cap = kDefaultOracleCap);

}  // namespace gcover
