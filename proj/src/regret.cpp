#include "zonal/regret.hpp"

#include <stdexcept>

namespace zonal {

CellRegret zonal_regret(double payment, double demand, double provided,
                        double gamma) {
  if (demand == 0.0) {
    if (provided > 0.0)
      throw std::invalid_argument(
          "zonal_regret: undefined ratio (zero demand, positive influence)");
    return {};
  }
  CellRegret r;
  if (demand > provided)
    r.unsatisfied = payment * (1.0 - gamma * provided / demand);
  else
    r.excessive = payment * (provided - demand) / demand;
  return r;
}

double cell_regret_value(double payment, double demand, double provided,
                         double gamma) {
  CellRegret r = zonal_regret(payment, demand, provided, gamma);
  return r.unsatisfied + r.excessive;
}

RegretReport total_regret(const Instance& inst, const Allocation& alloc) {
  RegretReport report;
  const double gamma = inst.penalty_ratio;
  for (const Advertiser& a : inst.advertisers) {
    bool satisfied = true;
    for (int z = 0; z < inst.zone_count; ++z) {
      double demand = a.zonal_demand[z];
      if (demand <= 0.0) continue;
      double provided = alloc.cell_influence(a.id, z);
      CellRegret cell = zonal_regret(a.payment, demand, provided, gamma);
      report.cells.push_back({a.id, z, cell.unsatisfied, cell.excessive});
      report.total_unsatisfied += cell.unsatisfied;
      report.total_excessive += cell.excessive;
      if (provided < demand) satisfied = false;
    }
    if (satisfied && !alloc.is_released(a.id)) ++report.satisfied_advertisers;
  }
  report.total = report.total_unsatisfied + report.total_excessive;
  return report;
}

double active_total_regret(const Instance& inst, const Allocation& alloc) {
  const double gamma = inst.penalty_ratio;
  double total = 0.0;
  for (const Advertiser& a : inst.advertisers) {
    if (alloc.is_released(a.id)) continue;
    for (int z = 0; z < inst.zone_count; ++z) {
      double demand = a.zonal_demand[z];
      if (demand <= 0.0) continue;
      total += cell_regret_value(a.payment, demand, alloc.cell_influence(a.id, z), gamma);
    }
  }
  return total;
}

bool advertiser_satisfied(const Instance& inst, const Allocation& alloc,
                          int advertiser) {
  const Advertiser& a = inst.advertisers[advertiser];
  for (int z = 0; z < inst.zone_count; ++z) {
    double demand = a.zonal_demand[z];
    if (demand <= 0.0) continue;
    if (alloc.cell_influence(advertiser, z) < demand) return false;
  }
  return true;
}

bool is_feasible(const Instance& inst, const Allocation& alloc) {
  // Disjointness is structural in Allocation; cross-check the maps anyway.
  std::vector<int> seen(inst.slot_count(), 0);
  for (const Advertiser& a : inst.advertisers) {
    for (SlotId s : alloc.slots_of(a.id)) {
      if (seen[s]++ || alloc.owner(s) != a.id) return false;
    }
  }
  for (const Advertiser& a : inst.advertisers) {
    if (alloc.is_released(a.id)) continue;
    if (!advertiser_satisfied(inst, alloc, a.id)) return false;
  }
  return true;
}

}  // namespace zonal
