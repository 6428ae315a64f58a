#include "zonal/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "zonal/io.hpp"
#include "zonal/regret.hpp"
#include "zonal/rng.hpp"

namespace zonal {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("spec key " + key + ": not a number: " + value);
  }
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("spec key " + key + ": not an integer: " + value);
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::runtime_error("spec key " + key + ": not a boolean: " + value);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void check_row(const ResultRow& row) {
  double recomposed = row.unsatisfied_regret + row.excessive_regret;
  if (std::fabs(row.total_regret - recomposed) > 1e-9)
    throw std::runtime_error(
        "refusing to emit row (" + row.allocator + ", rep " + row.repetition +
        "): total_regret " + fixed6(row.total_regret) +
        " != unsatisfied + excessive = " + fixed6(recomposed));
  if (row.satisfied_advertisers < 0)
    throw std::runtime_error("refusing to emit row: negative satisfied count");
}

}  // namespace

void apply_spec_key(ExperimentSpec& spec, const std::string& key,
                    const std::string& value) {
  if (key == "experiment_id") spec.experiment_id = value;
  else if (key == "source") {
    if (value == "generate") spec.source = ExperimentSpec::Source::generate;
    else if (value == "ingest") spec.source = ExperimentSpec::Source::ingest;
    else if (value == "instance") spec.source = ExperimentSpec::Source::instance_file;
    else throw std::runtime_error("spec key source: unknown value " + value);
  }
  else if (key == "delta") spec.gen.delta = to_double(key, value);
  else if (key == "lambda") spec.gen.lambda = to_double(key, value);
  else if (key == "advertisers") spec.gen.advertiser_count = static_cast<int>(to_int(key, value));
  else if (key == "gamma") spec.gen.gamma = to_double(key, value);
  else if (key == "slots") spec.gen.slot_count = static_cast<int>(to_int(key, value));
  else if (key == "zones") spec.gen.zone_count = static_cast<int>(to_int(key, value));
  else if (key == "trajectories") spec.gen.trajectory_count = static_cast<int>(to_int(key, value));
  else if (key == "alpha_min") spec.gen.alpha_min = to_double(key, value);
  else if (key == "alpha_max") spec.gen.alpha_max = to_double(key, value);
  else if (key == "beta_min") spec.gen.beta_min = to_double(key, value);
  else if (key == "beta_max") spec.gen.beta_max = to_double(key, value);
  else if (key == "seed") { spec.seed = static_cast<std::uint64_t>(to_int(key, value)); spec.gen.seed = spec.seed; }
  else if (key == "billboards") spec.billboards_path = value;
  else if (key == "trajectories_csv") spec.trajectories_path = value;
  else if (key == "zones_json") spec.zones_path = value;
  else if (key == "t1") spec.expansion.horizon_start = to_int(key, value);
  else if (key == "t2") spec.expansion.horizon_end = to_int(key, value);
  else if (key == "slot_duration") spec.expansion.slot_duration = to_int(key, value);
  else if (key == "eta") { spec.eta_m = to_double(key, value); spec.gen.eta_m = spec.eta_m; }
  else if (key == "base_probability") spec.base_probability = to_double(key, value);
  else if (key == "instance_file") spec.instance_path = value;
  else if (key == "allocators") spec.allocators = split_list(value);
  else if (key == "epsilon") spec.epsilon = to_double(key, value);
  else if (key == "max_rsg_rounds") spec.max_rsg_rounds = static_cast<int>(to_int(key, value));
  else if (key == "max_rae_passes") spec.max_rae_passes = static_cast<int>(to_int(key, value));
  else if (key == "reps") spec.repetitions = static_cast<int>(to_int(key, value));
  else if (key == "out") spec.out_path = value;
  else if (key == "format") spec.format = value;
  else if (key == "timings") spec.timings = to_bool(key, value);
  else throw std::runtime_error("unknown spec key: " + key);
}

ExperimentSpec parse_spec_text(const std::string& text) {
  ExperimentSpec spec;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("spec line " + std::to_string(line_no) +
                               ": expected key = value");
    apply_spec_key(spec, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_spec_text(text);
}

Instance build_instance(const ExperimentSpec& spec) {
  switch (spec.source) {
    case ExperimentSpec::Source::generate:
      return generate_instance(spec.gen);
    case ExperimentSpec::Source::instance_file:
      return load_instance(spec.instance_path);
    case ExperimentSpec::Source::ingest: {
      auto billboards = load_billboards(spec.billboards_path);
      auto trajectories = load_trajectories(spec.trajectories_path);
      ZoneSpec zone_spec = load_zone_spec(spec.zones_path);
      std::vector<ZoneId> zones = assign_zones(billboards.records, zone_spec);
      std::vector<ExpandedSlot> expanded =
          expand_slots(static_cast<int>(billboards.records.size()), spec.expansion);

      Instance inst;
      inst.zone_count = static_cast<int>(zone_spec.mode == ZoneSpec::Mode::boxes
                                             ? zone_spec.boxes.size()
                                             : zone_spec.points.size());
      inst.trajectory_count = static_cast<TrajectoryId>(trajectories.records.size());
      inst.penalty_ratio = spec.gen.gamma;
      inst.slots = compute_influence_rows(billboards.records, expanded, zones,
                                          trajectories.records, spec.expansion,
                                          spec.eta_m, spec.base_probability);
      if (spec.gen.advertiser_count > 0) {
        GenConfig gen = spec.gen;
        gen.zone_count = inst.zone_count;
        inst.advertisers = generate_advertisers(gen, total_supply(inst));
      }
      std::vector<std::string> problems = validate_instance(inst);
      if (!problems.empty())
        throw std::runtime_error("ingested instance invalid: " + problems.front());
      return inst;
    }
  }
  throw std::logic_error("unreachable");
}

std::uint64_t repetition_seed(std::uint64_t spec_seed,
                              const std::string& allocator, int repetition) {
  return mix_seed(mix_seed(spec_seed, hash_name(allocator)),
                  static_cast<std::uint64_t>(repetition) + 1);
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.repetitions < 1)
    throw std::runtime_error("run_experiment: repetitions must be >= 1");
  if (spec.allocators.empty())
    throw std::runtime_error("run_experiment: at least one allocator required");

  Instance inst = build_instance(spec);

  std::vector<std::string> names = spec.allocators;
  std::sort(names.begin(), names.end());

  std::vector<ResultRow> rows;
  for (const std::string& name : names) {
    double sum_total = 0, sum_unsat = 0, sum_excess = 0, sum_satisfied = 0, sum_ms = 0;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      AllocatorConfig cfg;
      cfg.epsilon = spec.epsilon;
      cfg.max_rsg_rounds = spec.max_rsg_rounds;
      cfg.max_rae_passes = spec.max_rae_passes;
      cfg.rng_seed = repetition_seed(spec.seed, name, rep);

      auto start = std::chrono::steady_clock::now();
      AllocatorResult result = run_allocator(name, inst, cfg);
      auto elapsed = std::chrono::steady_clock::now() - start;
      double ms = spec.timings
                      ? std::chrono::duration<double, std::milli>(elapsed).count()
                      : 0.0;

      RegretReport report = total_regret(inst, result.allocation);
      ResultRow row;
      bool knows_ratios = spec.source != ExperimentSpec::Source::instance_file;
      row.experiment_id = spec.experiment_id;
      row.allocator = name;
      row.repetition = std::to_string(rep);
      row.seed = std::to_string(cfg.rng_seed);
      row.delta = knows_ratios ? spec.gen.delta : 0.0;
      row.lambda = knows_ratios ? spec.gen.lambda : 0.0;
      row.gamma = inst.penalty_ratio;
      row.epsilon = spec.epsilon;
      row.eta = spec.eta_m;
      row.total_regret = report.total;
      row.unsatisfied_regret = report.total_unsatisfied;
      row.excessive_regret = report.total_excessive;
      row.satisfied_advertisers = report.satisfied_advertisers;
      row.wall_clock_ms = ms;
      rows.push_back(row);

      sum_total += report.total;
      sum_unsat += report.total_unsatisfied;
      sum_excess += report.total_excessive;
      sum_satisfied += report.satisfied_advertisers;
      sum_ms += ms;
    }
    ResultRow mean = rows.back();
    mean.repetition = "mean";
    mean.seed = "-";
    mean.total_regret = sum_total / spec.repetitions;
    mean.unsatisfied_regret = sum_unsat / spec.repetitions;
    mean.excessive_regret = sum_excess / spec.repetitions;
    mean.satisfied_advertisers = sum_satisfied / spec.repetitions;
    mean.wall_clock_ms = sum_ms / spec.repetitions;
    rows.push_back(mean);
  }
  return rows;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& format,
                  std::ostream& out) {
  for (const ResultRow& row : rows) check_row(row);

  if (format == "csv") {
    out << "experiment_id,allocator,repetition,seed,delta,lambda,gamma,epsilon,"
           "eta,total_regret,unsatisfied_regret,excessive_regret,"
           "satisfied_advertisers,wall_clock_ms\n";
    for (const ResultRow& r : rows) {
      out << r.experiment_id << ',' << r.allocator << ',' << r.repetition << ','
          << r.seed << ',' << fixed6(r.delta) << ',' << fixed6(r.lambda) << ','
          << fixed6(r.gamma) << ',' << fixed6(r.epsilon) << ',' << fixed6(r.eta)
          << ',' << fixed6(r.total_regret) << ',' << fixed6(r.unsatisfied_regret)
          << ',' << fixed6(r.excessive_regret) << ','
          << fixed6(r.satisfied_advertisers) << ',' << fixed6(r.wall_clock_ms)
          << '\n';
    }
  } else if (format == "json") {
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ResultRow& r = rows[i];
      out << "  {\"experiment_id\": \"" << r.experiment_id
          << "\", \"allocator\": \"" << r.allocator << "\", \"repetition\": \""
          << r.repetition << "\", \"seed\": \"" << r.seed
          << "\", \"delta\": " << fixed6(r.delta)
          << ", \"lambda\": " << fixed6(r.lambda)
          << ", \"gamma\": " << fixed6(r.gamma)
          << ", \"epsilon\": " << fixed6(r.epsilon)
          << ", \"eta\": " << fixed6(r.eta)
          << ", \"total_regret\": " << fixed6(r.total_regret)
          << ", \"unsatisfied_regret\": " << fixed6(r.unsatisfied_regret)
          << ", \"excessive_regret\": " << fixed6(r.excessive_regret)
          << ", \"satisfied_advertisers\": " << fixed6(r.satisfied_advertisers)
          << ", \"wall_clock_ms\": " << fixed6(r.wall_clock_ms) << "}"
          << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
  } else {
    throw std::runtime_error("unknown result format: " + format);
  }
}

void emit_results_file(const std::vector<ResultRow>& rows,
                       const std::string& format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  emit_results(rows, format, out);
}

}  // namespace zonal
