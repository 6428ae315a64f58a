#pragma once

#include <optional>
#include <vector>

#include "zonal/influence.hpp"
#include "zonal/model.hpp"

namespace zonal {

// Mutable map advertiser -> set of slots, with the inverse owner map and one
// influence accumulator per (advertiser, zone) cell so cell influences are
// O(1) reads. No slot ever has two owners.
//
// An advertiser can be released: its slots are withdrawn and it can never be
// assigned again. Reporting still charges a released advertiser's regret at
// the empty allocation; feasibility and satisfaction counts consider active
// advertisers only.
class Allocation {
 public:
  explicit Allocation(const Instance& inst);

  // Throws on invalid ids, a slot that already has an owner, or a released
  // advertiser.
  void add(int advertiser, SlotId s);

  // Throws unless `advertiser` currently owns `s`.
  void remove(int advertiser, SlotId s);

  // Withdraws every slot of `advertiser` and marks it released.
  // Returns the withdrawn slots (ascending id).
  std::vector<SlotId> release(int advertiser);

  std::optional<int> owner(SlotId s) const;
  const std::vector<SlotId>& slots_of(int advertiser) const;
  std::vector<SlotId> slots_of_in_zone(int advertiser, ZoneId z) const;

  double cell_influence(int advertiser, ZoneId z) const;
  const InfluenceAccumulator& cell(int advertiser, ZoneId z) const;

  bool is_released(int advertiser) const;
  std::vector<int> released() const;
  int active_count() const;

  const Instance& instance() const { return *inst_; }

 private:
  int cell_index(int advertiser, ZoneId z) const;
  void check_advertiser(int advertiser) const;

  const Instance* inst_;
  std::vector<std::vector<SlotId>> assigned_;  // per advertiser, ascending
  std::vector<int> owner_;                     // per slot, -1 = free
  std::vector<InfluenceAccumulator> cells_;    // advertiser-major, zone-minor
  std::vector<char> released_;
};

}  // namespace zonal
