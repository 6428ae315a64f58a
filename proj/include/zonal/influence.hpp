#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "zonal/model.hpp"

namespace zonal {

// Triggering-model influence of a slot set:
//   sum over trajectories t of 1 - prod_{s in set} (1 - Pr(s, t)).
// Throws std::invalid_argument on an unknown or duplicated slot id.
double influence(const Instance& inst, std::span<const SlotId> slot_set);

// Influence of a slot set maintained incrementally under add/remove.
// Keeps the survival product prod(1 - Pr) per touched trajectory; entries
// absent from the map have survival 1 (never touched).
class InfluenceAccumulator {
 public:
  explicit InfluenceAccumulator(const Instance& inst) : inst_(&inst) {}

  // Returns the new total. Throws if the slot is already in the set.
  double add(SlotId s);

  // Inverse of add; returns the new total. Throws if the slot is absent.
  // Division by the stored factors when every probability of the removed
  // row is < 1 - 1e-12, otherwise the touched trajectories are rebuilt
  // from the remaining members.
  double remove(SlotId s);

  // influence(members + {s}) - influence(members), without mutating.
  double marginal_gain(SlotId s) const;

  double value() const { return value_; }
  bool contains(SlotId s) const;
  const std::vector<SlotId>& members() const { return members_; }

 private:
  const Slot& checked_slot(SlotId s) const;
  void remove_rebuild(const std::vector<std::pair<TrajectoryId, double>>& row);

  const Instance* inst_;
  std::unordered_map<TrajectoryId, double> survival_;
  std::vector<SlotId> members_;  // sorted ascending
  double value_ = 0.0;
};

}  // namespace zonal
