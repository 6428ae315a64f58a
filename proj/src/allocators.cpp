// The six allocation strategies: full-pool budget-effective greedy (bg), its
// sampled variant (rg), the release loop on top of it (rsg), the same-zone
// pairwise exchange refinement (rae), and the random / top-k baselines.
//
// All strategies walk advertisers in descending payment-per-demand order and
// fill one (advertiser, zone) cell at a time from that zone's pool of
// unallocated slots. Zero-influence slots never enter a pool. The release and
// exchange phases optimize the total regret of the advertisers still served;
// reporting elsewhere charges released advertisers at their empty allocation.

#include "zonal/allocators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zonal/regret.hpp"
#include "zonal/rng.hpp"

namespace zonal {

namespace {

constexpr double kImprovementEps = 1e-9;

struct PhaseTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

struct Ctx {
  const Instance& inst;
  AllocatorConfig cfg;
  SplitMix64 rng;
  Allocation alloc;
  std::vector<std::vector<SlotId>> pools;  // per zone, ascending (influence, id)
  std::vector<int> order;                  // advertisers, descending u/sigma
  AllocatorTrace trace;

  Ctx(const Instance& inst_, const AllocatorConfig& cfg_)
      : inst(inst_),
        cfg(cfg_),
        rng(cfg_.rng_seed),
        alloc(inst_),
        pools(inst_.zone_count),
        order(sort_by_budget_effectiveness(inst_.advertisers)) {
    for (const Slot& s : inst.slots)
      if (s.individual_influence > 0.0 && s.zone >= 0 && s.zone < inst.zone_count)
        pools[s.zone].push_back(s.id);
    for (auto& pool : pools) sort_pool(pool);
  }

  void sort_pool(std::vector<SlotId>& pool) const {
    std::sort(pool.begin(), pool.end(), [this](SlotId a, SlotId b) {
      double ia = inst.slots[a].individual_influence;
      double ib = inst.slots[b].individual_influence;
      return ia != ib ? ia < ib : a < b;
    });
  }

  void pool_insert(std::vector<SlotId>& pool, SlotId s) const {
    auto less = [this](SlotId a, SlotId b) {
      double ia = inst.slots[a].individual_influence;
      double ib = inst.slots[b].individual_influence;
      return ia != ib ? ia < ib : a < b;
    };
    pool.insert(std::upper_bound(pool.begin(), pool.end(), s, less), s);
  }
};

void pool_erase(std::vector<SlotId>& pool, SlotId s) {
  pool.erase(std::find(pool.begin(), pool.end(), s));
}

// Best candidate by regret reduction per unit of individual influence,
// ties to the lower slot id. Returns -1 on an empty candidate range.
SlotId pick_best(const Ctx& ctx, int advertiser, ZoneId zone,
                 const std::vector<SlotId>& candidates, double* regret_drop) {
  const Advertiser& a = ctx.inst.advertisers[advertiser];
  const double demand = a.zonal_demand[zone];
  const double gamma = ctx.inst.penalty_ratio;
  const InfluenceAccumulator& cell = ctx.alloc.cell(advertiser, zone);
  const double before = cell_regret_value(a.payment, demand, cell.value(), gamma);

  SlotId best = -1;
  double best_ratio = -std::numeric_limits<double>::infinity();
  double best_drop = 0.0;
  for (SlotId s : candidates) {
    double gain = cell.marginal_gain(s);
    double after = cell_regret_value(a.payment, demand, cell.value() + gain, gamma);
    double drop = before - after;
    double ratio = drop / ctx.inst.slots[s].individual_influence;
    if (ratio > best_ratio || (ratio == best_ratio && s < best)) {
      best = s;
      best_ratio = ratio;
      best_drop = drop;
    }
  }
  if (regret_drop) *regret_drop = best_drop;
  return best;
}

// Uniform without-replacement sample of m pool entries. When m covers the
// pool the pool itself is the sample and no randomness is consumed, which
// makes a full-sample rg bit-identical to bg.
std::vector<SlotId> sample_pool(Ctx& ctx, const std::vector<SlotId>& pool, int m) {
  if (m >= static_cast<int>(pool.size())) return pool;
  std::vector<SlotId> scratch = pool;
  for (int i = 0; i < m; ++i) {
    std::size_t j = i + ctx.rng.below(scratch.size() - i);
    std::swap(scratch[i], scratch[j]);
  }
  scratch.resize(m);
  return scratch;
}

// Adds pool slots to (advertiser, zone) until the demand is met or the pool
// empties. `sampled` switches between the full pool per pick and the
// sample-size formula over the cell-start prefix.
void fill_cell(Ctx& ctx, int advertiser, ZoneId zone, bool sampled) {
  const Advertiser& a = ctx.inst.advertisers[advertiser];
  const double demand = a.zonal_demand[zone];
  if (demand <= 0.0) return;
  std::vector<SlotId>& pool = ctx.pools[zone];
  int prefix = 0;
  if (sampled && !pool.empty())
    prefix = greedy_prefix(ctx.inst, pool, demand).first;

  while (ctx.alloc.cell_influence(advertiser, zone) < demand && !pool.empty()) {
    std::vector<SlotId> candidates;
    if (sampled) {
      int m = sample_size(static_cast<int>(pool.size()), prefix, ctx.cfg.epsilon);
      candidates = sample_pool(ctx, pool, m);
    } else {
      candidates = pool;
    }
    double drop = 0.0;
    SlotId best = pick_best(ctx, advertiser, zone, candidates, &drop);
    ctx.alloc.add(advertiser, best);
    pool_erase(pool, best);
    ctx.trace.steps.push_back(
        {advertiser, zone, best, drop, static_cast<int>(candidates.size())});
  }
}

void greedy_pass(Ctx& ctx, bool sampled) {
  PhaseTimer timer;
  for (int a : ctx.order)
    for (int z = 0; z < ctx.inst.zone_count; ++z) fill_cell(ctx, a, z, sampled);
  ctx.trace.greedy_ms = timer.ms();
  ctx.trace.initial_active_total = active_total_regret(ctx.inst, ctx.alloc);
  ctx.trace.final_active_total = ctx.trace.initial_active_total;
}

std::vector<int> unsatisfied_active(const Ctx& ctx) {
  std::vector<int> out;
  for (const Advertiser& a : ctx.inst.advertisers) {
    if (ctx.alloc.is_released(a.id)) continue;
    if (!advertiser_satisfied(ctx.inst, ctx.alloc, a.id)) out.push_back(a.id);
  }
  return out;
}

// Release loop: while at least two active advertisers are unsatisfied, drop
// the least budget-effective one, return its slots to the pools, and re-fill
// the still-unsatisfied cells. A round that fails to improve the active
// total is rolled back and ends the loop.
void release_loop(Ctx& ctx) {
  PhaseTimer timer;
  const int cap = ctx.cfg.max_rsg_rounds > 0 ? ctx.cfg.max_rsg_rounds
                                             : 10 * ctx.inst.advertiser_count();
  int accepted = 0;
  while (true) {
    std::vector<int> unsat = unsatisfied_active(ctx);
    if (static_cast<int>(unsat.size()) <= 1) {
      ctx.trace.rsg_stop_reason = "few_unsatisfied";
      break;
    }
    if (accepted >= cap) {
      ctx.trace.rsg_stop_reason = "round_cap";
      break;
    }
    int victim = *std::min_element(unsat.begin(), unsat.end(), [&](int x, int y) {
      double bx = budget_effectiveness(ctx.inst.advertisers[x]);
      double by = budget_effectiveness(ctx.inst.advertisers[y]);
      return bx != by ? bx < by : x < y;
    });

    double before = active_total_regret(ctx.inst, ctx.alloc);
    Allocation snapshot = ctx.alloc;
    std::vector<std::vector<SlotId>> pool_snapshot = ctx.pools;

    for (SlotId s : ctx.alloc.release(victim))
      ctx.pool_insert(ctx.pools[ctx.inst.slots[s].zone], s);
    for (int a : ctx.order) {
      if (a == victim || ctx.alloc.is_released(a)) continue;
      for (int z = 0; z < ctx.inst.zone_count; ++z) {
        if (ctx.alloc.cell_influence(a, z) < ctx.inst.advertisers[a].zonal_demand[z])
          fill_cell(ctx, a, z, /*sampled=*/true);
      }
    }

    double after = active_total_regret(ctx.inst, ctx.alloc);
    bool improved = after < before - kImprovementEps;
    ctx.trace.release_rounds.push_back({victim, before, after, improved});
    if (!improved) {
      ctx.alloc = snapshot;
      ctx.pools = std::move(pool_snapshot);
      ctx.trace.rsg_stop_reason = "no_improvement";
      break;
    }
    ++accepted;
  }
  ctx.trace.release_ms = timer.ms();
  ctx.trace.final_active_total = active_total_regret(ctx.inst, ctx.alloc);
}

// Active-total delta of swapping s_i (owned by a_i) with s_j (owned by a_j),
// both in zone z. Only the two touched cells change.
double swap_delta(const Ctx& ctx, int a_i, int a_j, ZoneId z, SlotId s_i, SlotId s_j) {
  const Advertiser& ai = ctx.inst.advertisers[a_i];
  const Advertiser& aj = ctx.inst.advertisers[a_j];
  const double gamma = ctx.inst.penalty_ratio;

  InfluenceAccumulator ci = ctx.alloc.cell(a_i, z);
  InfluenceAccumulator cj = ctx.alloc.cell(a_j, z);
  double before = cell_regret_value(ai.payment, ai.zonal_demand[z], ci.value(), gamma) +
                  cell_regret_value(aj.payment, aj.zonal_demand[z], cj.value(), gamma);
  ci.remove(s_i);
  ci.add(s_j);
  cj.remove(s_j);
  cj.add(s_i);
  double after = cell_regret_value(ai.payment, ai.zonal_demand[z], ci.value(), gamma) +
                 cell_regret_value(aj.payment, aj.zonal_demand[z], cj.value(), gamma);
  return after - before;
}

// Pairwise same-zone exchange passes. A swap is committed the moment it
// strictly reduces the active total; a pass with no committed swap ends the
// loop.
void exchange_loop(Ctx& ctx) {
  PhaseTimer timer;
  for (int pass = 0; pass < ctx.cfg.max_rae_passes; ++pass) {
    int commits = 0;
    for (int a_i : ctx.order) {
      if (ctx.alloc.is_released(a_i)) continue;
      for (int a_j : ctx.order) {
        if (a_j == a_i || ctx.alloc.is_released(a_j)) continue;
        bool improved = true;
        while (improved) {
          improved = false;
          for (int z = 0; z < ctx.inst.zone_count && !improved; ++z) {
            std::vector<SlotId> own_i = ctx.alloc.slots_of_in_zone(a_i, z);
            std::vector<SlotId> own_j = ctx.alloc.slots_of_in_zone(a_j, z);
            for (SlotId s_i : own_i) {
              for (SlotId s_j : own_j) {
                if (swap_delta(ctx, a_i, a_j, z, s_i, s_j) < -kImprovementEps) {
                  ctx.alloc.remove(a_i, s_i);
                  ctx.alloc.remove(a_j, s_j);
                  ctx.alloc.add(a_i, s_j);
                  ctx.alloc.add(a_j, s_i);
                  ++commits;
                  improved = true;
                  break;
                }
              }
              if (improved) break;
            }
          }
        }
      }
    }
    ctx.trace.exchange_passes = pass + 1;
    ctx.trace.exchange_swaps += commits;
    if (commits == 0) break;
  }
  ctx.trace.exchange_ms = timer.ms();
  ctx.trace.final_active_total = active_total_regret(ctx.inst, ctx.alloc);
}

void random_pass(Ctx& ctx) {
  PhaseTimer timer;
  for (int a : ctx.order) {
    for (int z = 0; z < ctx.inst.zone_count; ++z) {
      const double demand = ctx.inst.advertisers[a].zonal_demand[z];
      if (demand <= 0.0) continue;
      std::vector<SlotId>& pool = ctx.pools[z];
      while (ctx.alloc.cell_influence(a, z) < demand && !pool.empty()) {
        std::size_t idx = ctx.rng.below(pool.size());
        SlotId s = pool[idx];
        pool.erase(pool.begin() + idx);
        ctx.alloc.add(a, s);
        ctx.trace.steps.push_back({a, z, s, 0.0, 1});
      }
    }
  }
  ctx.trace.greedy_ms = timer.ms();
  ctx.trace.initial_active_total = active_total_regret(ctx.inst, ctx.alloc);
  ctx.trace.final_active_total = ctx.trace.initial_active_total;
}

void topk_pass(Ctx& ctx) {
  PhaseTimer timer;
  // Per-zone pools descending by influence, ties to the lower id; a cursor
  // per zone since slots are only ever consumed.
  std::vector<std::vector<SlotId>> ordered(ctx.inst.zone_count);
  for (int z = 0; z < ctx.inst.zone_count; ++z) {
    ordered[z] = ctx.pools[z];
    std::sort(ordered[z].begin(), ordered[z].end(), [&](SlotId a, SlotId b) {
      double ia = ctx.inst.slots[a].individual_influence;
      double ib = ctx.inst.slots[b].individual_influence;
      return ia != ib ? ia > ib : a < b;
    });
  }
  std::vector<std::size_t> cursor(ctx.inst.zone_count, 0);
  for (int a : ctx.order) {
    for (int z = 0; z < ctx.inst.zone_count; ++z) {
      const double demand = ctx.inst.advertisers[a].zonal_demand[z];
      if (demand <= 0.0) continue;
      while (ctx.alloc.cell_influence(a, z) < demand &&
             cursor[z] < ordered[z].size()) {
        SlotId s = ordered[z][cursor[z]++];
        ctx.alloc.add(a, s);
        ctx.trace.steps.push_back({a, z, s, 0.0, 1});
      }
    }
  }
  ctx.trace.greedy_ms = timer.ms();
  ctx.trace.initial_active_total = active_total_regret(ctx.inst, ctx.alloc);
  ctx.trace.final_active_total = ctx.trace.initial_active_total;
}

void check_config(const AllocatorConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0, 1)");
  if (cfg.max_rae_passes < 1)
    throw std::invalid_argument("max_rae_passes must be positive");
  if (cfg.max_rsg_rounds < 0)
    throw std::invalid_argument("max_rsg_rounds must be non-negative");
}

}  // namespace

double budget_effectiveness(const Advertiser& a) {
  double demand = a.total_demand();
  if (demand <= 0.0)
    throw std::invalid_argument("advertiser " + std::to_string(a.id) +
                                " has zero total demand");
  return a.payment / demand;
}

std::vector<int> sort_by_budget_effectiveness(
    const std::vector<Advertiser>& advertisers) {
  std::vector<int> order(advertisers.size());
  for (std::size_t i = 0; i < advertisers.size(); ++i) order[i] = advertisers[i].id;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    double bx = budget_effectiveness(advertisers[x]);
    double by = budget_effectiveness(advertisers[y]);
    return bx != by ? bx > by : x < y;
  });
  return order;
}

std::pair<int, std::vector<SlotId>> greedy_prefix(const Instance& inst,
                                                  const std::vector<SlotId>& pool,
                                                  double demand) {
  std::vector<SlotId> prefix;
  double sum = 0.0;
  for (SlotId s : pool) {
    if (sum >= demand) break;
    prefix.push_back(s);
    sum += inst.slots[s].individual_influence;
  }
  if (demand <= 0.0) return {0, {}};
  return {static_cast<int>(prefix.size()), std::move(prefix)};
}

int sample_size(int pool_size, int prefix_size, double epsilon) {
  if (pool_size <= 0) return 0;
  if (prefix_size <= 0) prefix_size = pool_size;
  double raw = (static_cast<double>(pool_size) / prefix_size) * std::log(1.0 / epsilon);
  int m = static_cast<int>(std::ceil(raw));
  return std::clamp(m, 1, pool_size);
}

AllocatorResult allocate_bg(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  Ctx ctx(inst, cfg);
  greedy_pass(ctx, /*sampled=*/false);
  return {std::move(ctx.alloc), std::move(ctx.trace)};
}

AllocatorResult allocate_rg(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  Ctx ctx(inst, cfg);
  greedy_pass(ctx, /*sampled=*/true);
  return {std::move(ctx.alloc), std::move(ctx.trace)};
}

AllocatorResult allocate_rsg(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  Ctx ctx(inst, cfg);
  greedy_pass(ctx, /*sampled=*/true);
  release_loop(ctx);
  return {std::move(ctx.alloc), std::move(ctx.trace)};
}

AllocatorResult allocate_rae(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  Ctx ctx(inst, cfg);
  greedy_pass(ctx, /*sampled=*/true);
  release_loop(ctx);
  exchange_loop(ctx);
  return {std::move(ctx.alloc), std::move(ctx.trace)};
}

AllocatorResult allocate_random(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  Ctx ctx(inst, cfg);
  random_pass(ctx);
  return {std::move(ctx.alloc), std::move(ctx.trace)};
}

AllocatorResult allocate_topk(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  Ctx ctx(inst, cfg);
  topk_pass(ctx);
  return {std::move(ctx.alloc), std::move(ctx.trace)};
}

StagedRun run_staged(const Instance& inst, const AllocatorConfig& cfg) {
  check_config(cfg);
  Ctx ctx(inst, cfg);
  greedy_pass(ctx, /*sampled=*/true);
  Allocation after_greedy = ctx.alloc;
  release_loop(ctx);
  Allocation after_release = ctx.alloc;
  exchange_loop(ctx);
  return {std::move(after_greedy), std::move(after_release), std::move(ctx.alloc),
          std::move(ctx.trace)};
}

AllocatorResult run_allocator(const std::string& name, const Instance& inst,
                              const AllocatorConfig& cfg) {
  if (name == "bg") return allocate_bg(inst, cfg);
  if (name == "rg") return allocate_rg(inst, cfg);
  if (name == "rsg") return allocate_rsg(inst, cfg);
  if (name == "rae") return allocate_rae(inst, cfg);
  if (name == "random") return allocate_random(inst, cfg);
  if (name == "topk") return allocate_topk(inst, cfg);
  throw std::invalid_argument("unknown allocator: " + name);
}

const std::vector<std::string>& allocator_names() {
  static const std::vector<std::string> names{"bg", "rg", "rsg", "rae", "random", "topk"};
  return names;
}

}  // namespace zonal
