#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "zonal/allocators.hpp"
#include "zonal/fixture.hpp"
#include "zonal/oracle.hpp"
#include "zonal/regret.hpp"
#include "zonal/rng.hpp"
#include "test_util.hpp"

using namespace zonal;

namespace {

Instance tiny(const std::vector<std::pair<ZoneId, int>>& slot_layout,
              const std::vector<std::pair<double, std::vector<double>>>& ads,
              double gamma = 0.5) {
  Instance inst;
  inst.penalty_ratio = gamma;
  inst.zone_count = 1;
  for (const auto& [z, _] : slot_layout) inst.zone_count = std::max(inst.zone_count, z + 1);
  TrajectoryId next = 0;
  for (std::size_t i = 0; i < slot_layout.size(); ++i) {
    Slot s;
    s.id = static_cast<SlotId>(i);
    s.zone = slot_layout[i].first;
    for (int k = 0; k < slot_layout[i].second; ++k) s.row.emplace_back(next++, 1.0);
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

}  // namespace

TEST_CASE("exact-fit single slot is assigned at zero regret") {
  Instance inst = tiny({{0, 2}}, {{5.0, {2.0}}});
  OracleResult best = exact_min_regret(inst);
  CHECK(best.total == 0.0);
  CHECK(best.assignment == std::vector<int>{0});
}

TEST_CASE("no advertisers means no regret") {
  Instance inst = tiny({{0, 2}, {0, 1}}, {});
  OracleResult best = exact_min_regret(inst);
  CHECK(best.total == 0.0);
  CHECK(best.assignment == std::vector<int>{-1, -1});
}

TEST_CASE("leaving a slot unallocated can beat over-provisioning") {
  // One advertiser wanting 1 unit; slots of size 1 and 3. Taking only the
  // unit slot is exact, anything more is excess.
  Instance inst = tiny({{0, 1}, {0, 3}}, {{6.0, {1.0}}});
  OracleResult best = exact_min_regret(inst);
  CHECK(best.total == 0.0);
  CHECK(best.assignment == std::vector<int>{0, -1});
}

TEST_CASE("oracle dominates the heuristics on a two-advertiser world") {
  Instance inst = tiny({{0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}},
                       {{7.0, {3.0, 2.0}}, {5.0, {2.0, 3.0}}});
  double optimum = exact_min_regret(inst).total;
  for (const std::string& name : allocator_names()) {
    AllocatorConfig cfg;
    cfg.rng_seed = 11;
    double total = total_regret(inst, run_allocator(name, inst, cfg).allocation).total;
    CHECK(total >= optimum - 1e-9);
  }
}

TEST_CASE("the guard names its limits") {
  Instance big = example_instance();  // 13 slots, 5 advertisers
  CHECK_THROWS_WITH_AS(
      exact_min_regret(big),
      "exact_min_regret guard: needs slots <= 12 and advertisers <= 4, got 13 "
      "slots, 5 advertisers",
      std::invalid_argument);
}

TEST_CASE("gap conventions") {
  CHECK(gap_ratio(0.0, 0.0) == 1.0);
  CHECK(gap_ratio(5.0, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(gap_ratio(3.0, 1.5) == doctest::Approx(2.0).epsilon(1e-12));

  Instance inst = tiny({{0, 2}}, {{5.0, {2.0}}});
  Allocation exact(inst);
  exact.add(0, 0);
  CHECK(oracle_gap(inst, exact) == 1.0);
}

TEST_CASE("oracle is deterministic") {
  Instance inst = tiny({{0, 1}, {0, 2}, {1, 2}}, {{3.0, {1.0, 1.0}}, {4.0, {2.0, 1.0}}});
  OracleResult a = exact_min_regret(inst);
  OracleResult b = exact_min_regret(inst);
  CHECK(a.total == b.total);
  CHECK(a.assignment == b.assignment);
}

TEST_CASE("equal-regret ties resolve to the lexicographically smallest owners") {
  // Two identical advertisers, one slot: either owner gives the same total,
  // so the lower advertiser id wins over both the other id and nobody.
  Instance inst = tiny({{0, 1}}, {{1.0, {1.0}}, {1.0, {1.0}}});
  OracleResult best = exact_min_regret(inst);
  CHECK(best.assignment == std::vector<int>{0});
}

TEST_CASE("oracle dominance on random in-guard instances") {
  SplitMix64 rng(271828);
  testutil::RandomInstanceConfig cfg;
  cfg.max_slots = 7;
  cfg.max_trajectories = 10;
  cfg.max_advertisers = 3;
  cfg.zone_count = 2;
  cfg.integer_demands = true;
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = testutil::random_instance(rng, cfg);
    double optimum = exact_min_regret(inst).total;
    for (const std::string& name : allocator_names()) {
      AllocatorConfig c;
      c.epsilon = 0.3;
      c.rng_seed = rng.next();
      double total =
          total_regret(inst, run_allocator(name, inst, c).allocation).total;
      CHECK(total >= optimum - 1e-9);
      CHECK(gap_ratio(total, optimum) >= 1.0 - 1e-9);
    }
  }
}
