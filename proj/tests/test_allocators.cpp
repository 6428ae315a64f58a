#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "zonal/allocators.hpp"
#include "zonal/fixture.hpp"
#include "zonal/regret.hpp"
#include "zonal/rng.hpp"
#include "test_util.hpp"

using namespace zonal;

namespace {

// n disjoint unit-probability trajectories per requested influence value.
Instance unit_slot_instance(const std::vector<std::pair<ZoneId, int>>& layout,
                            const std::vector<std::pair<double, std::vector<double>>>& ads,
                            double gamma = 0.5) {
  Instance inst;
  inst.penalty_ratio = gamma;
  inst.zone_count = 1;
  for (const auto& [zone, _] : layout) inst.zone_count = std::max(inst.zone_count, zone + 1);
  TrajectoryId next = 0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    Slot s;
    s.id = static_cast<SlotId>(i);
    s.zone = layout[i].first;
    for (int k = 0; k < layout[i].second; ++k) s.row.emplace_back(next++, 1.0);
    s.finalize();
    inst.slots.push_back(std::move(s));
  }
  inst.trajectory_count = next;
  for (std::size_t i = 0; i < ads.size(); ++i) {
    Advertiser a;
    a.id = static_cast<int>(i);
    a.payment = ads[i].first;
    a.zonal_demand = ads[i].second;
    while (static_cast<int>(a.zonal_demand.size()) < inst.zone_count)
      a.zonal_demand.push_back(0.0);
    inst.advertisers.push_back(std::move(a));
  }
  return inst;
}

bool same_allocation(const Instance& inst, const Allocation& a, const Allocation& b) {
  for (const Advertiser& ad : inst.advertisers) {
    if (a.slots_of(ad.id) != b.slots_of(ad.id)) return false;
    if (a.is_released(ad.id) != b.is_released(ad.id)) return false;
    for (int z = 0; z < inst.zone_count; ++z)
      if (a.cell_influence(ad.id, z) != b.cell_influence(ad.id, z)) return false;
  }
  return true;
}

void check_structural_invariants(const Instance& inst, const Allocation& alloc) {
  std::vector<int> owners(inst.slot_count(), -1);
  for (const Advertiser& a : inst.advertisers) {
    for (SlotId s : alloc.slots_of(a.id)) {
      REQUIRE(owners[s] == -1);  // disjointness
      owners[s] = a.id;
      REQUIRE(alloc.owner(s) == a.id);
      // Never allocate into a zero-demand cell.
      REQUIRE(inst.advertisers[a.id].zonal_demand[inst.slots[s].zone] > 0.0);
    }
  }
  for (SlotId s = 0; s < inst.slot_count(); ++s) {
    auto o = alloc.owner(s);
    REQUIRE((o.has_value() ? *o : -1) == owners[s]);
  }
}

}  // namespace

TEST_CASE("budget effectiveness values") {
  Instance inst = example_instance();
  CHECK(budget_effectiveness(inst.advertisers[0]) ==
        doctest::Approx(15.0 / 7.0).epsilon(1e-12));
  CHECK(budget_effectiveness(inst.advertisers[4]) ==
        doctest::Approx(0.875).epsilon(1e-12));

  Advertiser even;
  even.id = 0;
  even.payment = 4.0;
  even.zonal_demand = {4.0};
  CHECK(budget_effectiveness(even) == 1.0);

  Advertiser zero;
  zero.id = 1;
  zero.payment = 4.0;
  zero.zonal_demand = {0.0};
  CHECK_THROWS_AS(budget_effectiveness(zero), std::invalid_argument);
}

TEST_CASE("budget-effectiveness ordering of the example advertisers") {
  Instance inst = example_instance();
  CHECK(sort_by_budget_effectiveness(inst.advertisers) ==
        std::vector<int>{0, 3, 1, 2, 4});

  std::vector<Advertiser> one = {inst.advertisers[2]};
  one[0].id = 0;
  CHECK(sort_by_budget_effectiveness(one) == std::vector<int>{0});

  // Equal ratios resolve to the lower id.
  std::vector<Advertiser> tied(2);
  tied[0].id = 0;
  tied[0].payment = 4;
  tied[0].zonal_demand = {2.0};
  tied[1].id = 1;
  tied[1].payment = 2;
  tied[1].zonal_demand = {1.0};
  CHECK(sort_by_budget_effectiveness(tied) == std::vector<int>{0, 1});
}

TEST_CASE("greedy prefix over an ascending pool") {
  Instance inst = unit_slot_instance({{0, 1}, {0, 2}, {0, 3}}, {{1.0, {1.0}}});
  std::vector<SlotId> pool{0, 1, 2};

  auto [count, prefix] = greedy_prefix(inst, pool, 3.0);
  CHECK(count == 2);  // 1 + 2 >= 3
  CHECK(prefix == std::vector<SlotId>{0, 1});

  CHECK(greedy_prefix(inst, pool, 0.0).first == 0);

  std::vector<SlotId> tiny{1};  // influence 2, demand 5: pool exhausts
  CHECK(greedy_prefix(inst, tiny, 5.0).first == 1);
}

TEST_CASE("sample size formula") {
  CHECK(sample_size(100, 10, 0.01) == 47);
  CHECK(sample_size(10, 10, std::exp(-1.0)) == 1);
  CHECK(sample_size(5, 1, 0.01) == 5);   // clamped to the pool
  CHECK(sample_size(0, 3, 0.1) == 0);
  CHECK(sample_size(8, 0, 0.1) == 3);    // degenerate prefix uses the pool size

  int prev = 1 << 30;
  for (double eps : {0.01, 0.05, 0.1, 0.15, 0.2}) {
    int m = sample_size(100, 10, eps);
    CHECK(m <= prev);
    prev = m;
  }
}

TEST_CASE("full-pool greedy packs exact unit supplies with zero regret") {
  Instance inst = unit_slot_instance(
      {{0, 1}, {0, 1}, {0, 1}, {1, 1}, {1, 1}, {1, 1}},
      {{3.0, {2.0, 1.0}}, {3.0, {1.0, 2.0}}});
  AllocatorResult result = allocate_bg(inst, {});
  RegretReport report = total_regret(inst, result.allocation);
  CHECK(report.total == 0.0);
  CHECK(report.satisfied_advertisers == 2);
  CHECK(is_feasible(inst, result.allocation));
  // Unit ties resolve to ascending ids.
  CHECK(result.allocation.slots_of(0) == std::vector<SlotId>{0, 1, 3});
  CHECK(result.allocation.slots_of(1) == std::vector<SlotId>{2, 4, 5});
}

TEST_CASE("full-pool greedy on the example instance") {
  Instance inst = example_instance();
  AllocatorResult result = allocate_bg(inst, {});
  check_structural_invariants(inst, result.allocation);

  int satisfied = total_regret(inst, result.allocation).satisfied_advertisers;
  CHECK(satisfied >= 3);

  // Unique-argmax picks: the exact-fit slot for the first advertiser's
  // first zone, and the exact-fit slot in its second zone.
  const std::vector<SlotId>& first = result.allocation.slots_of(0);
  CHECK(std::find(first.begin(), first.end(), 9) != first.end());
  CHECK(std::find(first.begin(), first.end(), 7) != first.end());
}

TEST_CASE("empty advertiser list yields an empty allocation") {
  Instance inst = example_instance();
  inst.advertisers.clear();
  AllocatorResult result = allocate_bg(inst, {});
  RegretReport report = total_regret(inst, result.allocation);
  CHECK(report.total == 0.0);
  CHECK(report.cells.empty());
}

TEST_CASE("sampled greedy with a full-covering sample matches bg bit for bit") {
  AllocatorConfig full;
  full.epsilon = 1e-300;  // ln(1/eps) ~ 690 covers any pool here
  full.rng_seed = 5;

  Instance fixture = example_instance();
  CHECK(same_allocation(fixture, allocate_bg(fixture, full).allocation,
                        allocate_rg(fixture, full).allocation));

  SplitMix64 rng(31);
  testutil::RandomInstanceConfig cfg;
  cfg.max_slots = 40;
  cfg.max_trajectories = 20;
  cfg.max_advertisers = 6;
  cfg.zone_count = 3;
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = testutil::random_instance(rng, cfg);
    AllocatorConfig c = full;
    c.rng_seed = rng.next();
    CHECK(same_allocation(inst, allocate_bg(inst, c).allocation,
                          allocate_rg(inst, c).allocation));
  }
}

TEST_CASE("sampled greedy is deterministic in the seed, trace included") {
  SplitMix64 rng(8);
  testutil::RandomInstanceConfig cfg;
  cfg.max_slots = 30;
  cfg.zone_count = 2;
  Instance inst = testutil::random_instance(rng, cfg);
  AllocatorConfig c;
  c.epsilon = 0.5;
  c.rng_seed = 77;
  AllocatorResult a = allocate_rg(inst, c);
  AllocatorResult b = allocate_rg(inst, c);
  CHECK(same_allocation(inst, a.allocation, b.allocation));
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());
  for (std::size_t i = 0; i < a.trace.steps.size(); ++i) {
    CHECK(a.trace.steps[i].advertiser == b.trace.steps[i].advertiser);
    CHECK(a.trace.steps[i].zone == b.trace.steps[i].zone);
    CHECK(a.trace.steps[i].slot == b.trace.steps[i].slot);
    CHECK(a.trace.steps[i].regret_drop == b.trace.steps[i].regret_drop);
    CHECK(a.trace.steps[i].sample_size == b.trace.steps[i].sample_size);
  }
}

TEST_CASE("release loop reproduces the walkthrough stages") {
  Instance inst = example_instance();
  AllocatorResult result = allocate_rsg(inst, example_config());
  CHECK(result.allocation.released() == std::vector<int>{4});
  CHECK(result.trace.rsg_stop_reason == "few_unsatisfied");
  REQUIRE(result.trace.release_rounds.size() == 1);
  CHECK(result.trace.release_rounds[0].released_advertiser == 4);
  CHECK(result.trace.release_rounds[0].accepted);

  // The pinned walkthrough seed lands on the reference allocation, so the
  // post-release holdings are exact.
  CHECK(result.allocation.slots_of(0) == std::vector<SlotId>{4, 8, 9});
  CHECK(result.allocation.slots_of(1) == std::vector<SlotId>{0, 2, 6});
  CHECK(result.allocation.slots_of(2) == std::vector<SlotId>{1, 3, 10});
  CHECK(result.allocation.slots_of(3) == std::vector<SlotId>{5, 7, 11});
  CHECK(result.allocation.slots_of(4).empty());
  CHECK(!advertiser_satisfied(inst, result.allocation, 2));
}

TEST_CASE("release loop is a no-op when everyone is satisfied") {
  Instance inst = unit_slot_instance({{0, 3}, {0, 3}}, {{2.0, {2.0}}, {2.0, {2.0}}});
  AllocatorConfig cfg;
  cfg.rng_seed = 3;
  AllocatorResult rg = allocate_rg(inst, cfg);
  AllocatorResult rsg = allocate_rsg(inst, cfg);
  CHECK(rsg.allocation.released().empty());
  CHECK(same_allocation(inst, rg.allocation, rsg.allocation));
  CHECK(total_regret(inst, rsg.allocation).satisfied_advertisers == 2);
}

TEST_CASE("a single unsatisfied advertiser is never released") {
  Instance inst = unit_slot_instance({{0, 1}}, {{2.0, {1.0}}, {9.0, {5.0}}});
  AllocatorResult rsg = allocate_rsg(inst, {});
  CHECK(rsg.allocation.released().empty());
  CHECK(total_regret(inst, rsg.allocation).satisfied_advertisers == 1);
}

TEST_CASE("exchange loop is a fixed point on a swap-optimal allocation") {
  Instance inst = unit_slot_instance(
      {{0, 1}, {0, 1}, {0, 1}, {1, 1}, {1, 1}, {1, 1}},
      {{3.0, {2.0, 1.0}}, {3.0, {1.0, 2.0}}});
  AllocatorConfig cfg;
  AllocatorResult rsg = allocate_rsg(inst, cfg);
  AllocatorResult rae = allocate_rae(inst, cfg);
  CHECK(total_regret(inst, rsg.allocation).total == 0.0);
  CHECK(same_allocation(inst, rsg.allocation, rae.allocation));
  CHECK(rae.trace.exchange_passes == 1);
  CHECK(rae.trace.exchange_swaps == 0);
}

TEST_CASE("exchange satisfies the shorted advertiser in the walkthrough") {
  Instance inst = example_instance();
  AllocatorResult rae = allocate_rae(inst, example_config());
  RegretReport report = total_regret(inst, rae.allocation);
  CHECK(report.satisfied_advertisers == 4);
  CHECK(rae.allocation.released() == std::vector<int>{4});
  CHECK(is_feasible(inst, rae.allocation));
}

TEST_CASE("exchange never loses to the release stage on seeded instances") {
  SplitMix64 rng(444);
  testutil::RandomInstanceConfig cfg;
  cfg.max_slots = 30;
  cfg.max_trajectories = 15;
  cfg.max_advertisers = 6;
  cfg.zone_count = 2;
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = testutil::random_instance(rng, cfg);
    AllocatorConfig c;
    c.epsilon = 0.3;
    c.rng_seed = rng.next();
    double rsg_total = total_regret(inst, allocate_rsg(inst, c).allocation).total;
    double rae_total = total_regret(inst, allocate_rae(inst, c).allocation).total;
    CHECK(rae_total <= rsg_total + 1e-9);
  }
}

TEST_CASE("accepted release rounds strictly improve the active objective") {
  SplitMix64 rng(555);
  testutil::RandomInstanceConfig cfg;
  cfg.max_slots = 25;
  cfg.max_trajectories = 12;
  cfg.max_advertisers = 6;
  cfg.zone_count = 2;
  int no_improvement_stops = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Instance inst = testutil::random_instance(rng, cfg);
    AllocatorConfig c;
    c.epsilon = 0.3;
    c.rng_seed = rng.next();
    AllocatorResult rsg = allocate_rsg(inst, c);
    for (const auto& round : rsg.trace.release_rounds)
      if (round.accepted)
        CHECK(round.active_total_after < round.active_total_before - 1e-9);
    // When the loop stops for lack of improvement after accepted rounds, the
    // final objective still beats the greedy pass it started from.
    if (rsg.trace.rsg_stop_reason == "no_improvement" &&
        std::any_of(rsg.trace.release_rounds.begin(), rsg.trace.release_rounds.end(),
                    [](const auto& r) { return r.accepted; })) {
      ++no_improvement_stops;
      CHECK(rsg.trace.final_active_total <= rsg.trace.initial_active_total + 1e-9);
    }
  }
  (void)no_improvement_stops;
}

TEST_CASE("random baseline allocates the only fitting slot") {
  Instance inst = unit_slot_instance({{0, 2}}, {{2.0, {1.0}}});
  AllocatorResult result = allocate_random(inst, {});
  CHECK(result.allocation.slots_of(0) == std::vector<SlotId>{0});
}

TEST_CASE("random baseline is seed-deterministic and shortage-safe") {
  SplitMix64 rng(66);
  testutil::RandomInstanceConfig cfg;
  cfg.max_slots = 25;
  cfg.zone_count = 3;
  Instance inst = testutil::random_instance(rng, cfg);
  AllocatorConfig c;
  c.rng_seed = 9;
  CHECK(same_allocation(inst, allocate_random(inst, c).allocation,
                        allocate_random(inst, c).allocation));

  // A zone with demand but no slots is left short without an error.
  Instance starved = unit_slot_instance({{0, 1}}, {{2.0, {1.0, 3.0}}});
  starved.zone_count = 2;
  AllocatorResult result = allocate_random(starved, c);
  CHECK(!advertiser_satisfied(starved, result.allocation, 0));
}

TEST_CASE("top-k baseline takes the biggest slots first") {
  Instance inst = unit_slot_instance({{0, 5}, {0, 3}, {0, 1}}, {{6.0, {6.0}}});
  AllocatorResult result = allocate_topk(inst, {});
  CHECK(result.allocation.slots_of(0) == std::vector<SlotId>{0, 1});
  CHECK(result.allocation.cell_influence(0, 0) == doctest::Approx(8.0));
  RegretReport report = total_regret(inst, result.allocation);
  CHECK(report.total_excessive == doctest::Approx(6.0 * 2.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("top-k skips zero-demand cells and breaks ties by id") {
  Instance inst = unit_slot_instance({{0, 2}, {0, 2}, {1, 9}}, {{2.0, {2.0, 0.0}}});
  AllocatorResult result = allocate_topk(inst, {});
  CHECK(result.allocation.slots_of(0) == std::vector<SlotId>{0});  // tie -> id 0
  CHECK(!result.allocation.owner(2).has_value());                  // zone 1 untouched
}

TEST_CASE("fuzz: every allocator respects the structural constraints") {
  SplitMix64 rng(31337);
  testutil::RandomInstanceConfig cfg;
  cfg.max_slots = 30;
  cfg.max_trajectories = 15;
  cfg.max_advertisers = 5;
  cfg.zone_count = 3;
  for (int trial = 0; trial < 25; ++trial) {
    Instance inst = testutil::random_instance(rng, cfg);
    for (const std::string& name : allocator_names()) {
      AllocatorConfig c;
      c.epsilon = 0.4;
      c.rng_seed = rng.next();
      AllocatorResult result = run_allocator(name, inst, c);
      check_structural_invariants(inst, result.allocation);
    }
  }
}

TEST_CASE("rejected configs") {
  Instance inst = example_instance();
  AllocatorConfig bad;
  bad.epsilon = 1.0;
  CHECK_THROWS_AS(allocate_rg(inst, bad), std::invalid_argument);
  CHECK_THROWS_AS(run_allocator("annealing", inst, {}), std::invalid_argument);
}
