#include "zonal/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zonal {

namespace {

constexpr double kEarthRadiusM = 6371000.0;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_iso8601(const std::string& s, std::int64_t* out) {
  int y, mo, d, h, mi, sec;
  char sep;
  if (std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &sec) != 7)
    return false;
  if (sep != 'T' && sep != ' ') return false;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || sec < 0 || sec > 60)
    return false;
  *out = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec;
  return true;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void check_reject_ratio(const std::string& path, std::size_t data_rows,
                        std::size_t rejects) {
  if (data_rows > 0 && rejects * 10 > data_rows)
    throw std::runtime_error(path + ": " + std::to_string(rejects) + " of " +
                             std::to_string(data_rows) +
                             " rows malformed (over the 10% limit)");
}

}  // namespace

LoadResult<BillboardRecord> load_billboards(const std::string& path) {
  std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || trim(lines[0]) != "billboard_id,lat,lon")
    throw std::runtime_error(path + ": expected header billboard_id,lat,lon");

  LoadResult<BillboardRecord> result;
  std::size_t data_rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    ++data_rows;
    int line_no = static_cast<int>(i + 1);
    std::vector<std::string> f = split_csv(lines[i]);
    if (f.size() != 3) {
      result.rejects.push_back({line_no, "expected 3 fields"});
      continue;
    }
    BillboardRecord rec;
    rec.billboard_id = f[0];
    if (rec.billboard_id.empty() || !parse_double(f[1], &rec.lat) ||
        !parse_double(f[2], &rec.lon)) {
      result.rejects.push_back({line_no, "unparsable field"});
      continue;
    }
    if (rec.lat < -90.0 || rec.lat > 90.0 || rec.lon < -180.0 || rec.lon > 180.0) {
      result.rejects.push_back({line_no, "coordinate out of range"});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  check_reject_ratio(path, data_rows, result.rejects.size());
  return result;
}

LoadResult<TrajectoryRecord> load_trajectories(const std::string& path) {
  std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || trim(lines[0]) != "user_id,lat,lon,timestamp")
    throw std::runtime_error(path + ": expected header user_id,lat,lon,timestamp");

  // Timestamp format is detected once per file from the first data row.
  bool detected = false;
  bool epoch_format = true;

  LoadResult<TrajectoryRecord> result;
  std::size_t data_rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    ++data_rows;
    int line_no = static_cast<int>(i + 1);
    std::vector<std::string> f = split_csv(lines[i]);
    if (f.size() != 4) {
      result.rejects.push_back({line_no, "expected 4 fields"});
      continue;
    }
    TrajectoryRecord rec;
    rec.user_id = f[0];
    if (rec.user_id.empty() || !parse_double(f[1], &rec.lat) ||
        !parse_double(f[2], &rec.lon)) {
      result.rejects.push_back({line_no, "unparsable field"});
      continue;
    }
    if (rec.lat < -90.0 || rec.lat > 90.0 || rec.lon < -180.0 || rec.lon > 180.0) {
      result.rejects.push_back({line_no, "coordinate out of range"});
      continue;
    }
    if (!detected) {
      epoch_format = looks_numeric(f[3]);
      detected = true;
    }
    bool ok = epoch_format
                  ? looks_numeric(f[3]) && (rec.timestamp = std::stoll(f[3]), true)
                  : parse_iso8601(f[3], &rec.timestamp);
    if (!ok) {
      result.rejects.push_back({line_no, "unparsable timestamp"});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  check_reject_ratio(path, data_rows, result.rejects.size());
  return result;
}

std::vector<ExpandedSlot> expand_slots(int billboard_count,
                                       const SlotExpansion& expansion) {
  if (expansion.slot_duration <= 0)
    throw std::invalid_argument("expand_slots: slot_duration must be positive");
  if (expansion.horizon_end <= expansion.horizon_start)
    throw std::invalid_argument("expand_slots: horizon_end must exceed horizon_start");
  std::int64_t windows =
      (expansion.horizon_end - expansion.horizon_start) / expansion.slot_duration;
  std::vector<ExpandedSlot> out;
  out.reserve(static_cast<std::size_t>(billboard_count) * windows);
  for (int b = 0; b < billboard_count; ++b)
    for (std::int64_t w = 0; w < windows; ++w)
      out.push_back({b, expansion.horizon_start + w * expansion.slot_duration});
  return out;
}

double haversine_m(double lat1, double lon1, double lat2, double lon2) {
  constexpr double deg = std::numbers::pi / 180.0;
  double dlat = (lat2 - lat1) * deg;
  double dlon = (lon2 - lon1) * deg;
  double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
             std::cos(lat1 * deg) * std::cos(lat2 * deg) * std::sin(dlon / 2) *
                 std::sin(dlon / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(a)));
}

bool ZoneSpec::Box::contains(double lat, double lon) const {
  return lat >= min_lat && lat <= max_lat && lon >= min_lon && lon <= max_lon;
}

std::pair<double, double> ZoneSpec::Box::center() const {
  return {(min_lat + max_lat) / 2.0, (min_lon + max_lon) / 2.0};
}

ZoneSpec load_zone_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);

  ZoneSpec spec;
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "boxes") {
    spec.mode = ZoneSpec::Mode::boxes;
    for (const auto& b : j.at("boxes"))
      spec.boxes.push_back({b.at("min_lat").get<double>(), b.at("max_lat").get<double>(),
                            b.at("min_lon").get<double>(), b.at("max_lon").get<double>()});
  } else if (mode == "centroids") {
    spec.mode = ZoneSpec::Mode::centroids;
    for (const auto& p : j.at("points"))
      spec.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  } else {
    throw std::runtime_error(path + ": unknown zone mode " + mode);
  }
  return spec;
}

std::vector<ZoneId> assign_zones(const std::vector<BillboardRecord>& billboards,
                                 const ZoneSpec& spec) {
  std::size_t zones = spec.mode == ZoneSpec::Mode::boxes ? spec.boxes.size()
                                                         : spec.points.size();
  if (zones == 0) throw std::invalid_argument("assign_zones: empty zone spec");

  std::vector<ZoneId> out(billboards.size(), 0);
  for (std::size_t i = 0; i < billboards.size(); ++i) {
    const BillboardRecord& b = billboards[i];
    if (spec.mode == ZoneSpec::Mode::boxes) {
      ZoneId z = -1;
      for (std::size_t k = 0; k < spec.boxes.size(); ++k) {
        if (spec.boxes[k].contains(b.lat, b.lon)) {
          z = static_cast<ZoneId>(k);
          break;
        }
      }
      if (z == -1) {
        // Orphan: nearest box center wins.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < spec.boxes.size(); ++k) {
          auto [clat, clon] = spec.boxes[k].center();
          double d = haversine_m(b.lat, b.lon, clat, clon);
          if (d < best) {
            best = d;
            z = static_cast<ZoneId>(k);
          }
        }
      }
      out[i] = z;
    } else {
      ZoneId z = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < spec.points.size(); ++k) {
        double d = haversine_m(b.lat, b.lon, spec.points[k].first, spec.points[k].second);
        if (d < best) {
          best = d;
          z = static_cast<ZoneId>(k);
        }
      }
      out[i] = z;
    }
  }
  return out;
}

std::vector<Slot> compute_influence_rows(
    const std::vector<BillboardRecord>& billboards,
    const std::vector<ExpandedSlot>& expanded,
    const std::vector<ZoneId>& zone_of_billboard,
    const std::vector<TrajectoryRecord>& trajectories,
    const SlotExpansion& expansion, double eta_m, double base_probability) {
  if (!(eta_m > 0.0))
    throw std::invalid_argument("compute_influence_rows: eta must be positive");
  if (!(base_probability > 0.0 && base_probability <= 1.0))
    throw std::invalid_argument("compute_influence_rows: base_probability outside (0, 1]");

  // Bucket check-ins by window index; a check-in influences only the slot
  // whose window contains its timestamp.
  std::int64_t windows =
      (expansion.horizon_end - expansion.horizon_start) / expansion.slot_duration;
  std::vector<std::vector<TrajectoryId>> bucket(std::max<std::int64_t>(windows, 0));
  for (std::size_t t = 0; t < trajectories.size(); ++t) {
    std::int64_t off = trajectories[t].timestamp - expansion.horizon_start;
    if (off < 0) continue;
    std::int64_t w = off / expansion.slot_duration;
    if (w >= windows) continue;
    bucket[w].push_back(static_cast<TrajectoryId>(t));
  }

  std::vector<Slot> slots(expanded.size());
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    const ExpandedSlot& e = expanded[i];
    const BillboardRecord& b = billboards[e.billboard];
    Slot& s = slots[i];
    s.id = static_cast<SlotId>(i);
    s.zone = zone_of_billboard[e.billboard];
    std::int64_t w = (e.window_start - expansion.horizon_start) / expansion.slot_duration;
    for (TrajectoryId t : bucket[w]) {
      const TrajectoryRecord& rec = trajectories[t];
      if (haversine_m(b.lat, b.lon, rec.lat, rec.lon) <= eta_m)
        s.row.emplace_back(t, base_probability);
    }
    s.finalize();
  }
  return slots;
}

int count_nonzero_slots(const std::vector<Slot>& slots) {
  int n = 0;
  for (const Slot& s : slots) n += !s.row.empty();
  return n;
}

}  // namespace zonal
