#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "zonal/fixture.hpp"
#include "zonal/gen.hpp"
#include "zonal/io.hpp"
#include "zonal/model.hpp"

using namespace zonal;

namespace {

GenConfig small_config() {
  GenConfig cfg;
  cfg.delta = 0.4;
  cfg.lambda = 0.1;
  cfg.advertiser_count = 4;
  cfg.slot_count = 60;
  cfg.zone_count = 3;
  cfg.trajectory_count = 200;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("total supply sums individual influences") {
  CHECK(total_supply(example_instance()) == doctest::Approx(44.0).epsilon(1e-12));

  Instance empty;
  CHECK(total_supply(empty) == 0.0);

  Instance uniform;
  uniform.zone_count = 1;
  uniform.trajectory_count = 3;
  for (int i = 0; i < 4; ++i) {
    Slot s;
    s.id = i;
    s.zone = 0;
    s.row = {{0, 1.0}, {1, 1.0}, {2, 1.0}};
    s.finalize();
    uniform.slots.push_back(s);
  }
  CHECK(total_supply(uniform) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("config validation ties delta to lambda times the advertiser count") {
  GenConfig cfg = small_config();
  CHECK(validate_config(cfg).empty());

  cfg.delta = 0.6;  // lambda * |A| = 0.4
  std::vector<std::string> v = validate_config(cfg);
  REQUIRE(!v.empty());
  CHECK(v.front().find("delta") != std::string::npos);
}

TEST_CASE("a single full-demand advertiser at the ratio identity") {
  GenConfig cfg;
  cfg.delta = 1.0;
  cfg.lambda = 1.0;
  cfg.advertiser_count = 1;
  cfg.alpha_min = cfg.alpha_max = 1.0;
  cfg.slot_count = 30;
  cfg.zone_count = 2;
  cfg.trajectory_count = 120;
  cfg.seed = 3;

  Instance inst = generate_instance(cfg);
  double supply = total_supply(inst);
  CHECK(inst.advertisers.size() == 1);
  CHECK(inst.advertisers[0].total_demand() ==
        doctest::Approx(std::floor(supply)).epsilon(1e-12));
}

TEST_CASE("generation is deterministic in the seed") {
  GenConfig cfg = small_config();
  CHECK(instance_to_json(generate_instance(cfg)) ==
        instance_to_json(generate_instance(cfg)));

  cfg.seed += 1;
  CHECK(instance_to_json(generate_instance(cfg)) !=
        instance_to_json(generate_instance(small_config())));
}

TEST_CASE("realized demand ratio tracks the configured delta") {
  GenConfig cfg;
  cfg.delta = 0.4;
  cfg.lambda = 0.004;
  cfg.advertiser_count = 100;
  cfg.slot_count = 400;
  cfg.zone_count = 5;
  cfg.trajectory_count = 1200;

  double sum_ratio = 0.0;
  const int seeds = 1000;
  for (int seed = 0; seed < seeds; ++seed) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    Instance inst = generate_instance(cfg);
    double supply = total_supply(inst);
    double demand = 0.0;
    for (const Advertiser& a : inst.advertisers) demand += a.total_demand();
    double ratio = demand / supply;
    CHECK(ratio >= 0.32);
    CHECK(ratio <= 0.48);
    sum_ratio += ratio;
  }
  double mean = sum_ratio / seeds;
  CHECK(mean >= 0.32);  // within +-20% of the configured 0.4
  CHECK(mean <= 0.48);
}

TEST_CASE("zonal splits preserve each advertiser's total demand") {
  GenConfig cfg = small_config();
  Instance inst = generate_instance(cfg);
  for (const Advertiser& a : inst.advertisers) {
    double total = std::accumulate(a.zonal_demand.begin(), a.zonal_demand.end(), 0.0);
    CHECK(total == doctest::Approx(a.total_demand()).epsilon(1e-12));
    for (double d : a.zonal_demand) {
      CHECK(d >= 0.0);
      CHECK(d == std::floor(d));  // integer parts from the rounding
    }
  }
}

TEST_CASE("one zone puts everything in zone zero") {
  GenConfig cfg = small_config();
  cfg.zone_count = 1;
  Instance inst = generate_instance(cfg);
  for (const Slot& s : inst.slots) CHECK(s.zone == 0);
  for (const Advertiser& a : inst.advertisers) CHECK(a.zonal_demand.size() == 1);
}

TEST_CASE("generated instances validate cleanly") {
  for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
    GenConfig cfg = small_config();
    cfg.seed = seed;
    CHECK(validate_instance(generate_instance(cfg)).empty());
  }
}

TEST_CASE("degenerate supply is rejected with advice") {
  GenConfig cfg = small_config();
  CHECK_THROWS_AS(generate_advertisers(cfg, 0.0), std::invalid_argument);

  cfg.lambda = 1e-9;  // floors every demand to zero
  cfg.delta = cfg.lambda * cfg.advertiser_count;
  CHECK_THROWS_WITH_AS(generate_instance(cfg),
                       "generate_advertisers: demand floors to zero; increase "
                       "supply or lambda",
                       std::invalid_argument);
}
