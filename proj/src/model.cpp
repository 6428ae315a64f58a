#include "zonal/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace zonal {

void Slot::finalize() {
  std::sort(row.begin(), row.end());
  individual_influence = 0.0;
  for (const auto& [t, p] : row) individual_influence += p;
}

double Advertiser::total_demand() const {
  return std::accumulate(zonal_demand.begin(), zonal_demand.end(), 0.0);
}

std::vector<std::vector<SlotId>> Instance::slots_by_zone() const {
  std::vector<std::vector<SlotId>> by_zone(zone_count);
  for (const Slot& s : slots) {
    if (s.zone >= 0 && s.zone < zone_count) by_zone[s.zone].push_back(s.id);
  }
  for (auto& pool : by_zone) {
    std::sort(pool.begin(), pool.end(), [this](SlotId a, SlotId b) {
      double ia = slots[a].individual_influence;
      double ib = slots[b].individual_influence;
      return ia != ib ? ia < ib : a < b;
    });
  }
  return by_zone;
}

namespace {

std::string fmt(const char* what, int idx, const std::string& detail) {
  std::ostringstream os;
  os << what << " " << idx << ": " << detail;
  return os.str();
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;

  if (inst.zone_count < 1) out.push_back("zone_count: must be >= 1");
  if (inst.trajectory_count < 0) out.push_back("trajectory_count: negative");
  if (!(inst.penalty_ratio >= 0.0 && inst.penalty_ratio <= 1.0))
    out.push_back("penalty_ratio: outside [0, 1]");

  for (int i = 0; i < inst.slot_count(); ++i) {
    const Slot& s = inst.slots[i];
    if (s.id != i) {
      out.push_back(fmt("slot", i, "id not dense (found " + std::to_string(s.id) + ")"));
      continue;
    }
    if (s.zone < 0 || s.zone >= inst.zone_count)
      out.push_back(fmt("slot", i, "zone " + std::to_string(s.zone) + " outside [0, k)"));
    double sum = 0.0;
    TrajectoryId prev = -1;
    bool sorted = true;
    for (const auto& [t, p] : s.row) {
      if (t < 0 || t >= inst.trajectory_count)
        out.push_back(fmt("slot", i, "trajectory index " + std::to_string(t) + " out of range"));
      if (!(p >= 0.0 && p <= 1.0))
        out.push_back(fmt("slot", i, "probability " + std::to_string(p) + " outside [0, 1]"));
      if (t <= prev) sorted = false;
      prev = t;
      sum += p;
    }
    if (!sorted) out.push_back(fmt("slot", i, "row not sorted by distinct trajectory"));
    if (std::fabs(sum - s.individual_influence) > 1e-9)
      out.push_back(fmt("slot", i, "individual_influence does not match row sum"));
  }

  for (int i = 0; i < inst.advertiser_count(); ++i) {
    const Advertiser& a = inst.advertisers[i];
    if (a.id != i)
      out.push_back(fmt("advertiser", i, "id not dense (found " + std::to_string(a.id) + ")"));
    if (!(a.payment > 0.0)) out.push_back(fmt("advertiser", i, "payment not positive"));
    if (static_cast<int>(a.zonal_demand.size()) != inst.zone_count)
      out.push_back(fmt("advertiser", i, "zonal_demand length != zone_count"));
    double total = 0.0;
    for (double d : a.zonal_demand) {
      if (d < 0.0) out.push_back(fmt("advertiser", i, "negative zonal demand"));
      total += d;
    }
    if (!(total > 0.0)) out.push_back(fmt("advertiser", i, "total demand not positive"));
  }

  return out;
}

}  // namespace zonal
