#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zonal/model.hpp"

namespace zonal {

struct BillboardRecord {
  std::string billboard_id;
  double lat = 0.0;
  double lon = 0.0;
};

struct TrajectoryRecord {
  std::string user_id;
  double lat = 0.0;
  double lon = 0.0;
  std::int64_t timestamp = 0;  // epoch seconds
};

struct RejectedRow {
  int line = 0;  // 1-based, header included
  std::string reason;
};

template <typename Record>
struct LoadResult {
  std::vector<Record> records;
  std::vector<RejectedRow> rejects;
};

// CSV with header `billboard_id,lat,lon`. Malformed rows are collected, not
// thrown; an unreadable file or more than 10% malformed data rows is a hard
// error.
LoadResult<BillboardRecord> load_billboards(const std::string& path);

// CSV with header `user_id,lat,lon,timestamp`. Timestamps are integer epoch
// seconds or ISO-8601 (YYYY-MM-DD[T ]HH:MM:SS[Z]); the format is detected
// once per file from the first data row. Duplicates are preserved.
LoadResult<TrajectoryRecord> load_trajectories(const std::string& path);

// Display horizon and per-slot window length, in epoch seconds.
struct SlotExpansion {
  std::int64_t horizon_start = 0;  // T1
  std::int64_t horizon_end = 0;    // T2
  std::int64_t slot_duration = 0;  // delta
};

struct ExpandedSlot {
  int billboard = 0;  // index into the billboard record list
  std::int64_t window_start = 0;
};

// One slot per billboard per full window; a final partial window is dropped.
// Ordered by (billboard, window start).
std::vector<ExpandedSlot> expand_slots(int billboard_count,
                                       const SlotExpansion& expansion);

// Great-circle distance in meters.
double haversine_m(double lat1, double lon1, double lat2, double lon2);

struct ZoneSpec {
  enum class Mode { boxes, centroids };
  struct Box {
    double min_lat, max_lat, min_lon, max_lon;
    bool contains(double lat, double lon) const;
    std::pair<double, double> center() const;
  };
  Mode mode = Mode::boxes;
  std::vector<Box> boxes;
  std::vector<std::pair<double, double>> points;  // (lat, lon) centroids
};

ZoneSpec load_zone_spec(const std::string& path);  // zones.json

// Every billboard maps to exactly one zone. Box mode: first containing box
// wins, orphans go to the nearest box center; centroid mode: nearest point.
// Ties break to the lower index. Throws on an empty spec.
std::vector<ZoneId> assign_zones(const std::vector<BillboardRecord>& billboards,
                                 const ZoneSpec& spec);

// Pr(slot, checkin) = base_probability when the check-in lies within eta_m
// meters of the slot's billboard and its timestamp falls in the slot's
// window, else 0. Each trajectory-db row is one influenceable unit.
std::vector<Slot> compute_influence_rows(
    const std::vector<BillboardRecord>& billboards,
    const std::vector<ExpandedSlot>& expanded,
    const std::vector<ZoneId>& zone_of_billboard,
    const std::vector<TrajectoryRecord>& trajectories,
    const SlotExpansion& expansion, double eta_m, double base_probability);

int count_nonzero_slots(const std::vector<Slot>& slots);

}  // namespace zonal
