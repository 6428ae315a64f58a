#pragma once

#include <string>
#include <vector>

#include "zonal/allocators.hpp"
#include "zonal/model.hpp"

namespace zonal {

// Built-in 13-slot / 3-zone / 5-advertiser worked example. Slot influences
// come from disjoint unit-probability rows, so set influence is additive.
Instance example_instance();

// The allocator config the walkthrough is pinned to. epsilon and seed are
// chosen so the sampled greedy pass lands on the reference allocation the
// staged expectations below encode (see fixture.cpp).
AllocatorConfig example_config();

struct WalkthroughStage {
  std::string name;
  std::vector<int> active;       // advertiser ids still served
  std::vector<int> satisfied;    // subset of active, every demand met
  std::vector<int> unsatisfied;  // active \ satisfied
  double reported_total = 0.0;   // Def-style total over all advertisers
};

struct WalkthroughResult {
  std::vector<WalkthroughStage> stages;  // greedy, release, exchange
  bool ok = false;
  std::string diff;  // expected-vs-actual satisfaction flags when !ok
  std::string text;  // printable trace
};

// Runs the example through the greedy -> release -> exchange pipeline and
// checks the staged satisfaction flags: {a3, a5} unsatisfied of 5, then a5
// released with a3 still unsatisfied (3 of 4), then all 4 satisfied.
WalkthroughResult fixture_walkthrough();

}  // namespace zonal
