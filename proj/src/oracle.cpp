#include "zonal/oracle.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "zonal/regret.hpp"

namespace zonal {

namespace {

constexpr int kMaxSlots = 12;
constexpr int kMaxAdvertisers = 4;

struct Search {
  const Instance& inst;
  std::vector<std::vector<int>> candidates;  // per slot, ascending advertiser ids
  Allocation alloc;
  std::vector<int> current;
  std::vector<int> best;
  double best_total = std::numeric_limits<double>::infinity();

  explicit Search(const Instance& inst_)
      : inst(inst_),
        candidates(inst_.slot_count()),
        alloc(inst_),
        current(inst_.slot_count(), -1),
        best(inst_.slot_count(), -1) {
    for (const Slot& s : inst.slots)
      for (const Advertiser& a : inst.advertisers)
        if (a.zonal_demand[s.zone] > 0.0) candidates[s.id].push_back(a.id);
  }

  double leaf_total() const {
    double total = 0.0;
    for (const Advertiser& a : inst.advertisers)
      for (int z = 0; z < inst.zone_count; ++z)
        if (a.zonal_demand[z] > 0.0)
          total += cell_regret_value(a.payment, a.zonal_demand[z],
                                     alloc.cell_influence(a.id, z),
                                     inst.penalty_ratio);
    return total;
  }

  // Enumerates owner codes ascending (advertisers, then nobody), so the
  // first strictly better leaf is the lexicographic minimum among ties.
  void dfs(int i) {
    if (i == inst.slot_count()) {
      double total = leaf_total();
      if (total < best_total) {
        best_total = total;
        best = current;
      }
      return;
    }
    for (int a : candidates[i]) {
      alloc.add(a, i);
      current[i] = a;
      dfs(i + 1);
      alloc.remove(a, i);
    }
    current[i] = -1;
    dfs(i + 1);
  }
};

}  // namespace

OracleResult exact_min_regret(const Instance& inst) {
  if (inst.slot_count() > kMaxSlots || inst.advertiser_count() > kMaxAdvertisers)
    throw std::invalid_argument(
        "exact_min_regret guard: needs slots <= " + std::to_string(kMaxSlots) +
        " and advertisers <= " + std::to_string(kMaxAdvertisers) + ", got " +
        std::to_string(inst.slot_count()) + " slots, " +
        std::to_string(inst.advertiser_count()) + " advertisers");

  Search search(inst);
  search.dfs(0);

  OracleResult result{Allocation(inst), search.best, search.best_total};
  for (int i = 0; i < inst.slot_count(); ++i)
    if (search.best[i] != -1) result.allocation.add(search.best[i], i);
  return result;
}

double gap_ratio(double allocator_total, double oracle_total) {
  constexpr double kZero = 1e-12;
  if (oracle_total <= kZero)
    return allocator_total <= kZero ? 1.0
                                    : std::numeric_limits<double>::infinity();
  return allocator_total / oracle_total;
}

double oracle_gap(const Instance& inst, const Allocation& allocator_result) {
  double oracle_total = exact_min_regret(inst).total;
  double allocator_total = total_regret(inst, allocator_result).total;
  return gap_ratio(allocator_total, oracle_total);
}

}  // namespace zonal
