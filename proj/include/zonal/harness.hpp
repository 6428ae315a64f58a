#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zonal/allocators.hpp"
#include "zonal/gen.hpp"
#include "zonal/ingest.hpp"
#include "zonal/model.hpp"

namespace zonal {

// One experiment: an instance source, a set of allocators, and a repetition
// protocol. Per-repetition allocator seeds derive deterministically from
// `seed`, so identical specs produce byte-identical result files (timings
// default to zero; enable them explicitly when measuring).
struct ExperimentSpec {
  enum class Source { generate, ingest, instance_file };

  std::string experiment_id = "exp";
  Source source = Source::generate;

  GenConfig gen;  // generate source; lambda/advertisers/seed also drive
                  // advertiser generation for the ingest source

  std::string billboards_path;
  std::string trajectories_path;
  std::string zones_path;
  SlotExpansion expansion{};
  double eta_m = 100.0;
  double base_probability = 0.1;

  std::string instance_path;

  std::vector<std::string> allocators{"rg"};
  double epsilon = 0.01;
  int max_rsg_rounds = 0;
  int max_rae_passes = 50;

  int repetitions = 3;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";  // csv | json
  bool timings = false;
};

struct ResultRow {
  std::string experiment_id;
  std::string allocator;
  std::string repetition;  // "0".."r-1" or "mean"
  std::string seed;        // per-rep seed, "-" for mean rows
  double delta = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
  double total_regret = 0.0;
  double unsatisfied_regret = 0.0;
  double excessive_regret = 0.0;
  double satisfied_advertisers = 0.0;  // fractional in mean rows
  double wall_clock_ms = 0.0;
};

// Key=value spec file (# comments, flat keys); unknown keys throw.
ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec parse_spec_file(const std::string& path);
void apply_spec_key(ExperimentSpec& spec, const std::string& key,
                    const std::string& value);

Instance build_instance(const ExperimentSpec& spec);

std::uint64_t repetition_seed(std::uint64_t spec_seed,
                              const std::string& allocator, int repetition);

// One row per (allocator, repetition) plus a mean row per allocator,
// sorted by (allocator, repetition).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

// Bit-stable serialization: fixed field order, %.6f floats. Rows violating
// the regret identity (total = unsatisfied + excessive within 1e-9) are
// refused with a diagnostic.
void emit_results(const std::vector<ResultRow>& rows, const std::string& format,
                  std::ostream& out);
void emit_results_file(const std::vector<ResultRow>& rows,
                       const std::string& format, const std::string& path);

}  // namespace zonal
