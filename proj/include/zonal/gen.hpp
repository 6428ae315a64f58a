#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zonal/model.hpp"

namespace zonal {

// Synthetic-instance generation over the experiment parameter grid.
// delta is global demand over supply, lambda the mean per-advertiser demand
// over supply; the three knobs are linked by delta = lambda * advertiser_count.
struct GenConfig {
  double delta = 1.0;
  double lambda = 0.05;
  int advertiser_count = 20;
  double gamma = 0.5;
  int slot_count = 100;
  int zone_count = 5;
  int trajectory_count = 1000;
  double eta_m = 100.0;  // only meaningful for geometry-backed instances; echoed in results
  double alpha_min = 0.8, alpha_max = 1.2;  // demand jitter
  double beta_min = 0.9, beta_max = 1.1;    // payment jitter
  std::uint64_t seed = 0;
};

// Empty when the config is usable; notably checks delta = lambda * |A|
// within 1%.
std::vector<std::string> validate_config(const GenConfig& cfg);

// sigma^h: sum of individual influences over all slots.
double total_supply(const Instance& inst);

// Sparse Bernoulli-probability rows over cfg.trajectory_count trajectories,
// zones assigned uniformly. Deterministic in cfg.seed.
std::vector<Slot> generate_slots(const GenConfig& cfg);

// Per advertiser: total demand floor(alpha * supply * lambda), payment
// max(1, floor(beta * demand)), zonal split by Dirichlet(1) weights with
// largest-remainder rounding (zones rounding to zero simply carry no demand).
// Throws when the floor collapses a demand to zero.
std::vector<Advertiser> generate_advertisers(const GenConfig& cfg, double supply);

// generate_slots + generate_advertisers wired into a validated Instance.
Instance generate_instance(const GenConfig& cfg);

}  // namespace zonal
