#include "zonal/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace zonal {

namespace {
constexpr int kSchemaVersion = 1;
}

std::string instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["zone_count"] = inst.zone_count;
  j["trajectory_count"] = inst.trajectory_count;
  j["penalty_ratio"] = inst.penalty_ratio;
  j["slots"] = nlohmann::ordered_json::array();
  for (const Slot& s : inst.slots) {
    nlohmann::ordered_json js;
    js["id"] = s.id;
    js["zone"] = s.zone;
    js["row"] = nlohmann::ordered_json::array();
    for (const auto& [t, p] : s.row) js["row"].push_back({t, p});
    j["slots"].push_back(std::move(js));
  }
  j["advertisers"] = nlohmann::ordered_json::array();
  for (const Advertiser& a : inst.advertisers) {
    nlohmann::ordered_json ja;
    ja["id"] = a.id;
    ja["payment"] = a.payment;
    ja["zonal_demand"] = a.zonal_demand;
    j["advertisers"].push_back(std::move(ja));
  }
  return j.dump(1);
}

Instance instance_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion)
    throw std::runtime_error("unsupported instance schema_version " +
                             std::to_string(version));

  Instance inst;
  inst.zone_count = j.at("zone_count").get<int>();
  inst.trajectory_count = j.at("trajectory_count").get<TrajectoryId>();
  inst.penalty_ratio = j.at("penalty_ratio").get<double>();
  for (const auto& js : j.at("slots")) {
    Slot s;
    s.id = js.at("id").get<SlotId>();
    s.zone = js.at("zone").get<ZoneId>();
    for (const auto& entry : js.at("row"))
      s.row.emplace_back(entry.at(0).get<TrajectoryId>(), entry.at(1).get<double>());
    s.finalize();
    inst.slots.push_back(std::move(s));
  }
  for (const auto& ja : j.at("advertisers")) {
    Advertiser a;
    a.id = ja.at("id").get<int>();
    a.payment = ja.at("payment").get<double>();
    a.zonal_demand = ja.at("zonal_demand").get<std::vector<double>>();
    inst.advertisers.push_back(std::move(a));
  }

  std::vector<std::string> problems = validate_instance(inst);
  if (!problems.empty())
    throw std::runtime_error("invalid instance: " + problems.front() + " (and " +
                             std::to_string(problems.size() - 1) + " more)");
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << instance_to_json(inst) << "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

}  // namespace zonal
