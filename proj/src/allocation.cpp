#include "zonal/allocation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace zonal {

Allocation::Allocation(const Instance& inst)
    : inst_(&inst),
      assigned_(inst.advertiser_count()),
      owner_(inst.slot_count(), -1),
      released_(inst.advertiser_count(), 0) {
  cells_.reserve(static_cast<std::size_t>(inst.advertiser_count()) * inst.zone_count);
  for (int a = 0; a < inst.advertiser_count(); ++a)
    for (int z = 0; z < inst.zone_count; ++z)
      cells_.emplace_back(inst);
}

int Allocation::cell_index(int advertiser, ZoneId z) const {
  return advertiser * inst_->zone_count + z;
}

void Allocation::check_advertiser(int advertiser) const {
  if (advertiser < 0 || advertiser >= inst_->advertiser_count())
    throw std::invalid_argument("unknown advertiser id " + std::to_string(advertiser));
}

void Allocation::add(int advertiser, SlotId s) {
  check_advertiser(advertiser);
  if (s < 0 || s >= inst_->slot_count())
    throw std::invalid_argument("unknown slot id " + std::to_string(s));
  if (released_[advertiser])
    throw std::invalid_argument("advertiser " + std::to_string(advertiser) + " is released");
  if (owner_[s] != -1)
    throw std::invalid_argument("slot " + std::to_string(s) + " already owned by advertiser " +
                                std::to_string(owner_[s]));
  owner_[s] = advertiser;
  auto& slots = assigned_[advertiser];
  slots.insert(std::lower_bound(slots.begin(), slots.end(), s), s);
  cells_[cell_index(advertiser, inst_->slots[s].zone)].add(s);
}

void Allocation::remove(int advertiser, SlotId s) {
  check_advertiser(advertiser);
  if (s < 0 || s >= inst_->slot_count())
    throw std::invalid_argument("unknown slot id " + std::to_string(s));
  if (owner_[s] != advertiser)
    throw std::invalid_argument("slot " + std::to_string(s) + " not owned by advertiser " +
                                std::to_string(advertiser));
  owner_[s] = -1;
  auto& slots = assigned_[advertiser];
  slots.erase(std::lower_bound(slots.begin(), slots.end(), s));
  cells_[cell_index(advertiser, inst_->slots[s].zone)].remove(s);
}

std::vector<SlotId> Allocation::release(int advertiser) {
  check_advertiser(advertiser);
  std::vector<SlotId> withdrawn = assigned_[advertiser];
  for (SlotId s : withdrawn) remove(advertiser, s);
  released_[advertiser] = 1;
  return withdrawn;
}

std::optional<int> Allocation::owner(SlotId s) const {
  if (s < 0 || s >= inst_->slot_count())
    throw std::invalid_argument("unknown slot id " + std::to_string(s));
  if (owner_[s] == -1) return std::nullopt;
  return owner_[s];
}

const std::vector<SlotId>& Allocation::slots_of(int advertiser) const {
  check_advertiser(advertiser);
  return assigned_[advertiser];
}

std::vector<SlotId> Allocation::slots_of_in_zone(int advertiser, ZoneId z) const {
  check_advertiser(advertiser);
  std::vector<SlotId> out;
  for (SlotId s : assigned_[advertiser])
    if (inst_->slots[s].zone == z) out.push_back(s);
  return out;
}

double Allocation::cell_influence(int advertiser, ZoneId z) const {
  return cell(advertiser, z).value();
}

const InfluenceAccumulator& Allocation::cell(int advertiser, ZoneId z) const {
  check_advertiser(advertiser);
  if (z < 0 || z >= inst_->zone_count)
    throw std::invalid_argument("unknown zone id " + std::to_string(z));
  return cells_[cell_index(advertiser, z)];
}

bool Allocation::is_released(int advertiser) const {
  check_advertiser(advertiser);
  return released_[advertiser] != 0;
}

std::vector<int> Allocation::released() const {
  std::vector<int> out;
  for (int a = 0; a < inst_->advertiser_count(); ++a)
    if (released_[a]) out.push_back(a);
  return out;
}

int Allocation::active_count() const {
  int n = 0;
  for (char r : released_) n += r == 0;
  return n;
}

}  // namespace zonal
