#pragma once

#include <vector>

#include "zonal/allocation.hpp"
#include "zonal/model.hpp"

namespace zonal {

// Exhaustive minimum-regret allocation. Guarded to slot_count <= 12 and
// advertiser_count <= 4 (search space (n+1)^l); throws past the guard.
// Slots may go to any advertiser with positive demand in the slot's zone,
// or to nobody. Ties resolve to the lexicographically smallest assignment
// vector (per-slot owner codes, nobody = n).
struct OracleResult {
  Allocation allocation;
  std::vector<int> assignment;  // per slot: advertiser id, -1 = nobody
  double total = 0.0;
};

OracleResult exact_min_regret(const Instance& inst);

// allocator_total / oracle_total; 1 when both are zero; +infinity when the
// oracle is zero and the allocator is not.
double gap_ratio(double allocator_total, double oracle_total);

// Convenience wrapper running the oracle on `inst`.
double oracle_gap(const Instance& inst, const Allocation& allocator_result);

}  // namespace zonal
