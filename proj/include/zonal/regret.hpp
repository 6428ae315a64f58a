#pragma once

#include <vector>

#include "zonal/allocation.hpp"
#include "zonal/model.hpp"

namespace zonal {

struct CellRegret {
  double unsatisfied = 0.0;
  double excessive = 0.0;
};

// Two-sided regret of one (advertiser, zone) cell:
//   demand > provided:  unsatisfied = payment * (1 - gamma * provided/demand)
//   otherwise:          excessive  = payment * (provided - demand) / demand
// At most one component is nonzero; provided == demand gives both zero.
// Throws std::invalid_argument when demand == 0 and provided > 0 (the ratio
// is undefined); demand == 0 with provided == 0 is a zero-regret cell.
CellRegret zonal_regret(double payment, double demand, double provided,
                        double gamma);

// Sum of the two components (exactly one nonzero).
double cell_regret_value(double payment, double demand, double provided,
                         double gamma);

struct RegretReport {
  struct Cell {
    int advertiser = 0;
    ZoneId zone = 0;
    double unsatisfied = 0.0;
    double excessive = 0.0;
  };
  std::vector<Cell> cells;  // every positive-demand cell, advertiser-major
  double total_unsatisfied = 0.0;
  double total_excessive = 0.0;
  double total = 0.0;
  int satisfied_advertisers = 0;  // active advertisers meeting every demand
};

// Per-cell breakdown over all advertisers (released advertisers are charged
// at their empty holdings) plus totals and the satisfied count.
RegretReport total_regret(const Instance& inst, const Allocation& alloc);

// Total regret of the active advertisers only. This is the objective the
// release and exchange heuristics optimize.
double active_total_regret(const Instance& inst, const Allocation& alloc);

// Every positive-demand cell of `advertiser` meets its demand.
bool advertiser_satisfied(const Instance& inst, const Allocation& alloc,
                          int advertiser);

// Disjointness plus the zonal influence constraint for every active
// advertiser.
bool is_feasible(const Instance& inst, const Allocation& alloc);

}  // namespace zonal
