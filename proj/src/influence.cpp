#include "zonal/influence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace zonal {

namespace {

constexpr double kDivisionSafety = 1.0 - 1e-12;

const Slot& slot_or_throw(const Instance& inst, SlotId s) {
  if (s < 0 || s >= inst.slot_count())
    throw std::invalid_argument("unknown slot id " + std::to_string(s));
  return inst.slots[s];
}

}  // namespace

double influence(const Instance& inst, std::span<const SlotId> slot_set) {
  std::unordered_map<TrajectoryId, double> survival;
  std::vector<char> seen(inst.slots.size(), 0);
  for (SlotId s : slot_set) {
    const Slot& slot = slot_or_throw(inst, s);
    if (seen[s])
      throw std::invalid_argument("duplicate slot id " + std::to_string(s));
    seen[s] = 1;
    for (const auto& [t, p] : slot.row) {
      auto [it, inserted] = survival.try_emplace(t, 1.0);
      it->second *= 1.0 - p;
    }
  }
  double total = 0.0;
  for (const auto& [t, surv] : survival) total += 1.0 - surv;
  return total;
}

const Slot& InfluenceAccumulator::checked_slot(SlotId s) const {
  return slot_or_throw(*inst_, s);
}

bool InfluenceAccumulator::contains(SlotId s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

double InfluenceAccumulator::add(SlotId s) {
  const Slot& slot = checked_slot(s);
  if (contains(s))
    throw std::invalid_argument("slot " + std::to_string(s) + " already in set");
  members_.insert(std::lower_bound(members_.begin(), members_.end(), s), s);
  for (const auto& [t, p] : slot.row) {
    auto [it, inserted] = survival_.try_emplace(t, 1.0);
    double before = it->second;
    it->second = before * (1.0 - p);
    value_ += before - it->second;
  }
  return value_;
}

void InfluenceAccumulator::remove_rebuild(
    const std::vector<std::pair<TrajectoryId, double>>& row) {
  // Recompute the removed row's trajectories from the remaining members.
  std::unordered_map<TrajectoryId, double> fresh;
  fresh.reserve(row.size());
  for (const auto& [t, p] : row) fresh.emplace(t, 1.0);
  for (SlotId m : members_) {
    for (const auto& [t, p] : inst_->slots[m].row) {
      auto it = fresh.find(t);
      if (it != fresh.end()) it->second *= 1.0 - p;
    }
  }
  for (const auto& [t, p] : row) {
    auto it = survival_.find(t);
    double before = it->second;
    double after = fresh.at(t);
    value_ += before - after;
    if (after == 1.0)
      survival_.erase(it);
    else
      it->second = after;
  }
}

double InfluenceAccumulator::remove(SlotId s) {
  const Slot& slot = checked_slot(s);
  auto pos = std::lower_bound(members_.begin(), members_.end(), s);
  if (pos == members_.end() || *pos != s)
    throw std::invalid_argument("slot " + std::to_string(s) + " not in set");
  members_.erase(pos);

  bool divisible = true;
  for (const auto& [t, p] : slot.row) {
    if (p >= kDivisionSafety) {
      divisible = false;
      break;
    }
  }
  if (divisible) {
    for (const auto& [t, p] : slot.row) {
      auto it = survival_.find(t);
      double before = it->second;
      double after = before / (1.0 - p);
      if (after > 1.0) after = 1.0;
      value_ += before - after;
      if (after == 1.0)
        survival_.erase(it);
      else
        it->second = after;
    }
  } else {
    remove_rebuild(slot.row);
  }
  return value_;
}

double InfluenceAccumulator::marginal_gain(SlotId s) const {
  const Slot& slot = checked_slot(s);
  if (contains(s))
    throw std::invalid_argument("slot " + std::to_string(s) + " already in set");
  double gain = 0.0;
  for (const auto& [t, p] : slot.row) {
    auto it = survival_.find(t);
    double surv = it == survival_.end() ? 1.0 : it->second;
    gain += surv * p;
  }
  return gain;
}

}  // namespace zonal
