#include "zonal/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "zonal/rng.hpp"

namespace zonal {

namespace {

// Per-slot row shape: up to kMaxRowLen distinct trajectories with triggering
// probabilities in [kProbLo, kProbHi]. Mean individual influence lands
// around 3.6, heterogeneous enough that greedy picks have real choices.
constexpr int kMaxRowLen = 12;
constexpr double kProbLo = 0.2;
constexpr double kProbHi = 0.9;

// Largest-remainder split of an integer total by nonnegative weights.
std::vector<double> split_integer(double total, const std::vector<double>& weights) {
  const std::size_t k = weights.size();
  double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> out(k, 0.0);
  if (wsum <= 0.0 || total <= 0.0) return out;

  std::vector<double> frac(k);
  double assigned = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double share = total * weights[i] / wsum;
    out[i] = std::floor(share);
    frac[i] = share - out[i];
    assigned += out[i];
  }
  int leftover = static_cast<int>(std::lround(total - assigned));
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (int i = 0; i < leftover; ++i) out[idx[i % k]] += 1.0;
  return out;
}

}  // namespace

std::vector<std::string> validate_config(const GenConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.advertiser_count < 1) out.push_back("advertiser_count: must be >= 1");
  if (cfg.slot_count < 1) out.push_back("slot_count: must be >= 1");
  if (cfg.zone_count < 1) out.push_back("zone_count: must be >= 1");
  if (cfg.trajectory_count < 1) out.push_back("trajectory_count: must be >= 1");
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) out.push_back("gamma: outside [0, 1]");
  if (!(cfg.lambda > 0.0)) out.push_back("lambda: must be positive");
  if (!(cfg.delta > 0.0)) out.push_back("delta: must be positive");
  double implied = cfg.lambda * cfg.advertiser_count;
  if (std::fabs(implied - cfg.delta) > 0.01 * std::max(cfg.delta, implied))
    out.push_back("delta: not within 1% of lambda * advertiser_count");
  if (!(cfg.alpha_min <= cfg.alpha_max) || !(cfg.alpha_min > 0.0))
    out.push_back("alpha range: invalid");
  if (!(cfg.beta_min <= cfg.beta_max) || !(cfg.beta_min > 0.0))
    out.push_back("beta range: invalid");
  return out;
}

double total_supply(const Instance& inst) {
  double supply = 0.0;
  for (const Slot& s : inst.slots) supply += s.individual_influence;
  return supply;
}

std::vector<Slot> generate_slots(const GenConfig& cfg) {
  SplitMix64 rng(mix_seed(cfg.seed, hash_name("slots")));
  std::vector<Slot> slots(cfg.slot_count);
  std::vector<TrajectoryId> scratch;
  for (int i = 0; i < cfg.slot_count; ++i) {
    Slot& s = slots[i];
    s.id = i;
    s.zone = static_cast<ZoneId>(rng.below(cfg.zone_count));
    int len = 1 + static_cast<int>(rng.below(std::min(kMaxRowLen, cfg.trajectory_count)));
    scratch.clear();
    while (static_cast<int>(scratch.size()) < len) {
      TrajectoryId t = static_cast<TrajectoryId>(rng.below(cfg.trajectory_count));
      if (std::find(scratch.begin(), scratch.end(), t) == scratch.end())
        scratch.push_back(t);
    }
    for (TrajectoryId t : scratch)
      s.row.emplace_back(t, rng.uniform(kProbLo, kProbHi));
    s.finalize();
  }
  return slots;
}

std::vector<Advertiser> generate_advertisers(const GenConfig& cfg, double supply) {
  if (!(supply > 0.0))
    throw std::invalid_argument("generate_advertisers: supply must be positive");
  SplitMix64 rng(mix_seed(cfg.seed, hash_name("advertisers")));
  std::vector<Advertiser> advertisers(cfg.advertiser_count);
  for (int i = 0; i < cfg.advertiser_count; ++i) {
    Advertiser& a = advertisers[i];
    a.id = i;
    double alpha = rng.uniform(cfg.alpha_min, cfg.alpha_max);
    double demand = std::floor(alpha * supply * cfg.lambda);
    if (demand < 1.0)
      throw std::invalid_argument(
          "generate_advertisers: demand floors to zero; increase supply or lambda");
    double beta = rng.uniform(cfg.beta_min, cfg.beta_max);
    a.payment = std::max(1.0, std::floor(beta * demand));

    std::vector<double> weights(cfg.zone_count);
    for (double& w : weights) w = rng.exponential();  // Dirichlet(1)
    a.zonal_demand = split_integer(demand, weights);
  }
  return advertisers;
}

Instance generate_instance(const GenConfig& cfg) {
  std::vector<std::string> problems = validate_config(cfg);
  if (!problems.empty())
    throw std::invalid_argument("generate_instance: " + problems.front());

  Instance inst;
  inst.zone_count = cfg.zone_count;
  inst.trajectory_count = cfg.trajectory_count;
  inst.penalty_ratio = cfg.gamma;
  inst.slots = generate_slots(cfg);
  inst.advertisers = generate_advertisers(cfg, total_supply(inst));

  std::vector<std::string> violations = validate_instance(inst);
  if (!violations.empty())
    throw std::logic_error("generated instance invalid: " + violations.front());
  return inst;
}

}  // namespace zonal
