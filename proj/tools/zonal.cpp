// Command-line front end: generate synthetic instances, ingest CSV data,
// run allocator sweeps, query the exact oracle, and replay the built-in
// walkthrough example.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "zonal/fixture.hpp"
#include "zonal/gen.hpp"
#include "zonal/harness.hpp"
#include "zonal/io.hpp"
#include "zonal/oracle.hpp"
#include "zonal/regret.hpp"

namespace {

void add_gen_flags(CLI::App* cmd, zonal::ExperimentSpec& spec) {
  cmd->add_option("--delta", spec.gen.delta, "global demand / supply ratio");
  cmd->add_option("--lambda", spec.gen.lambda, "mean per-advertiser demand / supply ratio");
  cmd->add_option("--advertisers", spec.gen.advertiser_count, "number of advertisers");
  cmd->add_option("--gamma", spec.gen.gamma, "penalty ratio in [0, 1]");
  cmd->add_option("--slots", spec.gen.slot_count, "number of slots");
  cmd->add_option("--zones", spec.gen.zone_count, "number of zones");
  cmd->add_option("--trajectories", spec.gen.trajectory_count, "number of trajectories");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"billboard slot allocation under zonal influence constraints"};
  app.require_subcommand(1);

  zonal::ExperimentSpec spec;
  std::string spec_path;
  std::string instance_out = "instance.json";
  std::string instance_in;
  std::uint64_t seed = 0;

  // generate: synthetic instance -> instance file
  CLI::App* generate = app.add_subcommand("generate", "generate a synthetic instance");
  add_gen_flags(generate, spec);
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--out", instance_out, "instance file to write");

  // ingest: CSV/JSON data -> instance file
  CLI::App* ingest = app.add_subcommand("ingest", "build an instance from CSV data");
  ingest->add_option("--billboards", spec.billboards_path, "billboards.csv")->required();
  ingest->add_option("--trajectories-csv", spec.trajectories_path, "trajectories.csv")->required();
  ingest->add_option("--zones-json", spec.zones_path, "zones.json")->required();
  ingest->add_option("--t1", spec.expansion.horizon_start, "horizon start (epoch s)")->required();
  ingest->add_option("--t2", spec.expansion.horizon_end, "horizon end (epoch s)")->required();
  ingest->add_option("--slot-duration", spec.expansion.slot_duration, "window length (s)")->required();
  ingest->add_option("--eta", spec.eta_m, "influence radius in meters");
  ingest->add_option("--base-probability", spec.base_probability, "triggering probability within eta");
  ingest->add_option("--advertisers", spec.gen.advertiser_count, "advertisers to generate (0 = none)");
  ingest->add_option("--lambda", spec.gen.lambda, "per-advertiser demand ratio for generated advertisers");
  ingest->add_option("--delta", spec.gen.delta, "demand/supply ratio echo");
  ingest->add_option("--gamma", spec.gen.gamma, "penalty ratio");
  ingest->add_option("--seed", seed, "advertiser generation seed");
  ingest->add_option("--out", instance_out, "instance file to write");

  // run: experiment spec -> result rows
  CLI::App* run = app.add_subcommand("run", "run an allocator experiment");
  run->add_option("--spec", spec_path, "key=value spec file (flags override)");
  run->add_option("--source", [&spec](const std::vector<std::string>& v) {
    zonal::apply_spec_key(spec, "source", v.back());
    return true;
  }, "generate | ingest | instance");
  add_gen_flags(run, spec);
  run->add_option("--instance-file", spec.instance_path, "instance file (source = instance)");
  run->add_option("--billboards", spec.billboards_path, "billboards.csv (source = ingest)");
  run->add_option("--trajectories-csv", spec.trajectories_path, "trajectories.csv (source = ingest)");
  run->add_option("--zones-json", spec.zones_path, "zones.json (source = ingest)");
  run->add_option("--t1", spec.expansion.horizon_start, "horizon start");
  run->add_option("--t2", spec.expansion.horizon_end, "horizon end");
  run->add_option("--slot-duration", spec.expansion.slot_duration, "window length");
  run->add_option("--eta", spec.eta_m, "influence radius in meters");
  run->add_option("--base-probability", spec.base_probability, "triggering probability");
  run->add_option("--allocators", [&spec](const std::vector<std::string>& v) {
    zonal::apply_spec_key(spec, "allocators", v.back());
    return true;
  }, "comma list of bg,rg,rsg,rae,random,topk");
  run->add_option("--epsilon", spec.epsilon, "sampling accuracy knob in (0, 1)");
  run->add_option("--seed", seed, "experiment seed");
  run->add_option("--reps", spec.repetitions, "repetitions per allocator");
  run->add_option("--out", spec.out_path, "results file (stdout when omitted)");
  run->add_option("--format", spec.format, "csv | json");
  run->add_flag("--timings", spec.timings, "record real wall clocks (breaks byte-stable output)");
  run->add_option("--experiment-id", spec.experiment_id, "identifier echoed in rows");

  // oracle: tiny instance -> exact optimum
  CLI::App* oracle = app.add_subcommand("oracle", "exact minimum regret of a tiny instance");
  oracle->add_option("--instance-file", instance_in, "instance file")->required();

  // fixture: built-in walkthrough
  app.add_subcommand("fixture", "replay the built-in walkthrough example");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      spec.seed = seed;
      spec.gen.seed = seed;
      zonal::Instance inst = zonal::generate_instance(spec.gen);
      zonal::save_instance(inst, instance_out);
      std::printf("wrote %s: %d slots, %d zones, %d advertisers, supply %.3f\n",
                  instance_out.c_str(), inst.slot_count(), inst.zone_count,
                  inst.advertiser_count(), zonal::total_supply(inst));
      return 0;
    }

    if (ingest->parsed()) {
      spec.source = zonal::ExperimentSpec::Source::ingest;
      spec.seed = seed;
      spec.gen.seed = seed;
      if (spec.gen.advertiser_count > 0)
        spec.gen.delta = spec.gen.lambda * spec.gen.advertiser_count;
      zonal::Instance inst = zonal::build_instance(spec);
      zonal::save_instance(inst, instance_out);
      int nonzero = zonal::count_nonzero_slots(inst.slots);
      std::printf("wrote %s: %d slots (%d with influence), %d zones, %d advertisers\n",
                  instance_out.c_str(), inst.slot_count(), nonzero, inst.zone_count,
                  inst.advertiser_count());
      return 0;
    }

    if (run->parsed()) {
      // Flags override spec-file values; copy over exactly the flags given.
      zonal::ExperimentSpec merged =
          spec_path.empty() ? zonal::ExperimentSpec{} : zonal::parse_spec_file(spec_path);
      if (run->count("--source")) merged.source = spec.source;
      if (run->count("--delta")) merged.gen.delta = spec.gen.delta;
      if (run->count("--lambda")) merged.gen.lambda = spec.gen.lambda;
      if (run->count("--advertisers")) merged.gen.advertiser_count = spec.gen.advertiser_count;
      if (run->count("--gamma")) merged.gen.gamma = spec.gen.gamma;
      if (run->count("--slots")) merged.gen.slot_count = spec.gen.slot_count;
      if (run->count("--zones")) merged.gen.zone_count = spec.gen.zone_count;
      if (run->count("--trajectories")) merged.gen.trajectory_count = spec.gen.trajectory_count;
      if (run->count("--instance-file")) merged.instance_path = spec.instance_path;
      if (run->count("--billboards")) merged.billboards_path = spec.billboards_path;
      if (run->count("--trajectories-csv")) merged.trajectories_path = spec.trajectories_path;
      if (run->count("--zones-json")) merged.zones_path = spec.zones_path;
      if (run->count("--t1")) merged.expansion.horizon_start = spec.expansion.horizon_start;
      if (run->count("--t2")) merged.expansion.horizon_end = spec.expansion.horizon_end;
      if (run->count("--slot-duration")) merged.expansion.slot_duration = spec.expansion.slot_duration;
      if (run->count("--eta")) { merged.eta_m = spec.eta_m; merged.gen.eta_m = spec.eta_m; }
      if (run->count("--base-probability")) merged.base_probability = spec.base_probability;
      if (run->count("--allocators")) merged.allocators = spec.allocators;
      if (run->count("--epsilon")) merged.epsilon = spec.epsilon;
      if (run->count("--seed")) { merged.seed = seed; merged.gen.seed = seed; }
      if (run->count("--reps")) merged.repetitions = spec.repetitions;
      if (run->count("--out")) merged.out_path = spec.out_path;
      if (run->count("--format")) merged.format = spec.format;
      if (run->count("--timings")) merged.timings = spec.timings;
      if (run->count("--experiment-id")) merged.experiment_id = spec.experiment_id;

      std::vector<zonal::ResultRow> rows = zonal::run_experiment(merged);
      if (merged.out_path.empty())
        zonal::emit_results(rows, merged.format, std::cout);
      else {
        zonal::emit_results_file(rows, merged.format, merged.out_path);
        std::printf("wrote %s (%zu rows)\n", merged.out_path.c_str(), rows.size());
      }
      return 0;
    }

    if (oracle->parsed()) {
      zonal::Instance inst = zonal::load_instance(instance_in);
      zonal::OracleResult best = zonal::exact_min_regret(inst);
      std::printf("optimal total regret: %.6f\n", best.total);
      for (int i = 0; i < inst.slot_count(); ++i) {
        if (best.assignment[i] == -1)
          std::printf("slot %d -> (nobody)\n", i);
        else
          std::printf("slot %d -> advertiser %d\n", i, best.assignment[i]);
      }
      return 0;
    }

    // fixture
    zonal::WalkthroughResult result = zonal::fixture_walkthrough();
    std::cout << result.text;
    if (!result.ok) {
      std::cout << "WALKTHROUGH DIVERGED:\n" << result.diff;
      return 1;
    }
    std::cout << "walkthrough ok\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
