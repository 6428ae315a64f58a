#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zonal/allocation.hpp"
#include "zonal/model.hpp"

namespace zonal {

struct AllocatorConfig {
  double epsilon = 0.01;        // sample-size accuracy knob, in (0, 1)
  std::uint64_t rng_seed = 0;
  int max_rsg_rounds = 0;       // 0 -> 10 * advertiser_count
  int max_rae_passes = 50;
};

struct AllocatorTrace {
  struct Step {
    int advertiser = 0;
    ZoneId zone = 0;
    SlotId slot = 0;
    double regret_drop = 0.0;  // advertiser-regret reduction of the pick
    int sample_size = 0;       // candidates examined (pool size for bg)
  };
  struct ReleaseRound {
    int released_advertiser = -1;
    double active_total_before = 0.0;
    double active_total_after = 0.0;
    bool accepted = false;
  };

  std::vector<Step> steps;
  std::vector<ReleaseRound> release_rounds;
  std::string rsg_stop_reason;  // "few_unsatisfied" | "no_improvement" | "round_cap"
  int exchange_passes = 0;
  int exchange_swaps = 0;
  double initial_active_total = 0.0;  // after the greedy pass
  double final_active_total = 0.0;

  // Measured wall clocks; informational only, excluded from the determinism
  // contract.
  double greedy_ms = 0.0;
  double release_ms = 0.0;
  double exchange_ms = 0.0;
};

struct AllocatorResult {
  Allocation allocation;
  AllocatorTrace trace;
};

// payment / total demand. Throws on zero demand.
double budget_effectiveness(const Advertiser& a);

// Advertiser ids, descending by payment/demand, ties by ascending id.
std::vector<int> sort_by_budget_effectiveness(
    const std::vector<Advertiser>& advertisers);

// Smallest prefix of a pool sorted ascending by individual influence whose
// additive influence sum reaches `demand` (the whole pool if it never does).
// Returns {count, prefix slot ids}.
std::pair<int, std::vector<SlotId>> greedy_prefix(const Instance& inst,
                                                  const std::vector<SlotId>& pool,
                                                  double demand);

// ceil((pool_size / prefix_size) * ln(1/epsilon)), clamped to [1, pool_size].
// prefix_size == 0 degenerates to the whole pool; pool_size == 0 gives 0.
int sample_size(int pool_size, int prefix_size, double epsilon);

// The six allocation strategies. All are deterministic functions of
// (instance, config); shortage never throws, it just leaves cells short.
AllocatorResult allocate_bg(const Instance& inst, const AllocatorConfig& cfg);
AllocatorResult allocate_rg(const Instance& inst, const AllocatorConfig& cfg);
AllocatorResult allocate_rsg(const Instance& inst, const AllocatorConfig& cfg);
AllocatorResult allocate_rae(const Instance& inst, const AllocatorConfig& cfg);
AllocatorResult allocate_random(const Instance& inst, const AllocatorConfig& cfg);
AllocatorResult allocate_topk(const Instance& inst, const AllocatorConfig& cfg);

// One rg -> release loop -> exchange loop run with the intermediate
// allocations captured. allocate_rg / allocate_rsg / allocate_rae are
// prefixes of this pipeline and agree with it bit for bit on equal configs.
struct StagedRun {
  Allocation after_greedy;
  Allocation after_release;
  Allocation after_exchange;
  AllocatorTrace trace;
};
StagedRun run_staged(const Instance& inst, const AllocatorConfig& cfg);

// Dispatch by CLI name: bg, rg, rsg, rae, random, topk. Throws on others.
AllocatorResult run_allocator(const std::string& name, const Instance& inst,
                              const AllocatorConfig& cfg);
const std::vector<std::string>& allocator_names();

}  // namespace zonal
