#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace zonal {

using SlotId = std::int32_t;
using ZoneId = std::int32_t;
using TrajectoryId = std::int32_t;

// One billboard x time-window unit. `row` is the sparse vector of
// per-trajectory triggering probabilities; `individual_influence` is its sum,
// i.e. the expected number of trajectories the slot influences on its own.
struct Slot {
  SlotId id = 0;
  ZoneId zone = 0;
  double individual_influence = 0.0;
  std::vector<std::pair<TrajectoryId, double>> row;

  // Sorts the row by trajectory and recomputes individual_influence.
  void finalize();
};

// An advertiser's campaign proposal: payment plus a per-zone influence demand.
struct Advertiser {
  int id = 0;
  double payment = 0.0;
  std::vector<double> zonal_demand;

  double total_demand() const;
};

// Immutable problem world. penalty_ratio is the gamma of the two-sided regret
// model: 0 means no payment at all on a shortfall, 1 means pro-rata payment.
struct Instance {
  int zone_count = 1;
  TrajectoryId trajectory_count = 0;
  double penalty_ratio = 0.5;
  std::vector<Slot> slots;
  std::vector<Advertiser> advertisers;

  int slot_count() const { return static_cast<int>(slots.size()); }
  int advertiser_count() const { return static_cast<int>(advertisers.size()); }

  // Slot ids per zone, ascending by (individual influence, id).
  std::vector<std::vector<SlotId>> slots_by_zone() const;
};

// Human-readable descriptions of every invariant violation; empty means the
// instance is well formed. Violations are returned, never thrown.
std::vector<std::string> validate_instance(const Instance& inst);

}  // namespace zonal
