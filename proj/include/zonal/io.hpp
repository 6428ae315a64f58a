#pragma once

#include <string>

#include "zonal/model.hpp"

namespace zonal {

// Self-contained instance file: slots with sparse rows, zones, advertisers,
// gamma, versioned with schema_version (currently 1).
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

}  // namespace zonal
