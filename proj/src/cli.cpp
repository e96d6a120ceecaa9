// Copyright 2026 The unsharp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unsharp/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <system_error>

#include "unsharp/continuous_inference.hpp"
#include "unsharp/ensemble.hpp"
#include "unsharp/errors.hpp"
#include "unsharp/validation.hpp"

namespace unsharp {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommonFlags {
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  unsigned workers = 0;
};

void add_common(CLI::App* command, CommonFlags& flags) {
  command->add_option("--seed", flags.seed, "Master seed (64-bit unsigned)")->capture_default_str();
  command->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  command->add_option("--out", flags.out, "Output path (default: standard output)");
  command->add_option("--workers", flags.workers, "Worker threads, 0 = hardware concurrency")
      ->capture_default_str();
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    T value{};
    const char* first = item.data();
    const char* last = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || item.empty()) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw UsageError(std::string(flag) + " needs at least one value");
  return values;
}

PurificationStrategy parse_strategy(const std::string& name) {
  return name == "dominant" ? PurificationStrategy::dominant_eigenstate : PurificationStrategy::random_eigenstate;
}

Json table_rows(const OutputTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json object = Json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) object[table.columns[c]] = row[c];
    rows.push_back(std::move(object));
  }
  return rows;
}

void write_text(const std::string& text, const CommonFlags& common, std::ostream& out) {
  if (common.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + common.out);
  file << text;
  if (!file) throw std::runtime_error("failed writing " + common.out);
}

void emit(const OutputTable& table, const std::string& command, const CommonFlags& common, Json flags,
          std::ostream& out) {
  std::string text;
  if (common.format == "json") {
    flags["seed"] = common.seed;
    flags["format"] = common.format;
    Json document;
    document["meta"] = {{"command", command},
                        {"artifact_version", kArtifactVersion},
                        {"seed", common.seed},
                        {"flags", std::move(flags)},
                        {"columns", table.columns}};
    document["rows"] = table_rows(table);
    text = document.dump(2) + "\n";
  } else {
    text = to_csv(table);
  }
  write_text(text, common, out);
}

struct FidelityCurveFlags {
  double delta = 20.0;
  std::string n_grid = "0,2,5,10,20,40";
  std::size_t trials = 10000;
  std::string strategy = "random";
  std::string estimator = "purity";
};

OutputTable fidelity_curve(const FidelityCurveFlags& flags, const CommonFlags& common) {
  const std::vector<std::size_t> grid = parse_list<std::size_t>(flags.n_grid, "--n-grid");
  const MeasurementSettings settings(flags.delta);

  ExperimentSpec spec;
  spec.precision = flags.delta;
  spec.n_grid = grid;
  spec.trials = flags.trials;
  spec.strategy = parse_strategy(flags.strategy);
  spec.workers = common.workers;

  EnsembleStatistics direct;
  EnsembleStatistics purity;
  if (flags.estimator != "purity") {
    spec.kind = ExperimentKind::sequential_fidelity;
    spec.seed = derive_seed(common.seed, 0);
    direct = run_ensemble(spec);
  }
  if (flags.estimator != "direct") {
    spec.kind = ExperimentKind::hypothetical_purity;
    spec.seed = derive_seed(common.seed, 1);
    purity = run_ensemble(spec);
  }

  OutputTable table;
  if (flags.estimator == "both") {
    table.columns = {"n", "mean_F_direct", "stderr_direct", "mean_F_purity", "stderr_purity", "F_sat_closed_form"};
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const GridPoint& d = direct.points[g];
      const GridPoint& p = purity.points[g];
      table.rows.push_back({d.grid_value, d.mean, d.std_error, p.mean, p.std_error, *d.reference});
    }
  } else {
    const EnsembleStatistics& stats = flags.estimator == "direct" ? direct : purity;
    table.columns = {"n", "mean_F", "stderr", "F_sat_closed_form"};
    for (const GridPoint& p : stats.points) table.rows.push_back({p.grid_value, p.mean, p.std_error, *p.reference});
  }
  return table;
}

struct ContinuumFlags {
  double delta = 20.0;
  double n_max = -1.0;
  std::size_t points = 11;
  double dt = kDefaultTimeStep;
  std::size_t trajectories = 1000;
  std::string time_convention = "nominal";
};

OutputTable continuum_compare(const ContinuumFlags& flags, const CommonFlags& common) {
  const MeasurementSettings settings(flags.delta);
  const TimeConvention convention =
      flags.time_convention == "matched" ? TimeConvention::matched : TimeConvention::nominal;
  const TimeMapping mapping(settings, convention);
  if (flags.points < 2) throw UsageError("--points must be at least 2");

  // Default horizon: the step count that reaches t = 1.
  const double n_max = flags.n_max >= 0.0 ? flags.n_max : std::round(mapping.steps(1.0));
  std::vector<double> times;
  for (std::size_t k = 0; k < flags.points; ++k) {
    const double n = std::round(n_max * static_cast<double>(k) / static_cast<double>(flags.points - 1));
    times.push_back(mapping.time(n));
  }

  ExperimentSpec spec;
  spec.precision = flags.delta;
  spec.t_grid = times;
  spec.dt = flags.dt;
  spec.trials = flags.trajectories;
  spec.time_convention = convention;
  spec.workers = common.workers;

  spec.kind = ExperimentKind::continuum_compare;
  spec.seed = derive_seed(common.seed, 0);
  const EnsembleStatistics discrete = run_ensemble(spec);
  spec.kind = ExperimentKind::continuum_trajectory;
  spec.seed = derive_seed(common.seed, 1);
  const EnsembleStatistics sde = run_ensemble(spec);

  OutputTable table;
  table.columns = {"t", "discrete_mean_purity", "sde_mean_purity", "drift_closed_form"};
  for (std::size_t g = 0; g < times.size(); ++g) {
    table.rows.push_back({times[g], discrete.points[g].mean, sde.points[g].mean, drift_purity(times[g])});
  }
  return table;
}

struct ValidateFlags {
  std::string delta_list = "0.1,1,10";
  bool quick = false;
  double inject_noise_scale = 1.0;
};

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buffer, ptr);
}

std::string to_csv(const OutputTable& table) {
  std::string text;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) text += ',';
    text += table.columns[c];
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) text += ',';
      text += format_number(row[c]);
    }
    text += '\n';
  }
  return text;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo qubit estimation from repeated unsharp measurements", "unsharp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kArtifactVersion);

  CommonFlags fidelity_common;
  FidelityCurveFlags fidelity_flags;
  CLI::App* fidelity_cmd = app.add_subcommand("fidelity-curve", "Average fidelity versus number of measurements");
  fidelity_cmd->add_option("--delta", fidelity_flags.delta, "Measurement precision")->capture_default_str();
  fidelity_cmd->add_option("--n-grid", fidelity_flags.n_grid, "Comma-separated measurement counts")
      ->capture_default_str();
  fidelity_cmd->add_option("--trials", fidelity_flags.trials, "Trials per grid point")->capture_default_str();
  fidelity_cmd->add_option("--strategy", fidelity_flags.strategy, "Purification strategy")
      ->check(CLI::IsMember({"random", "dominant"}))
      ->capture_default_str();
  fidelity_cmd->add_option("--estimator", fidelity_flags.estimator, "Fidelity estimator")
      ->check(CLI::IsMember({"direct", "purity", "both"}))
      ->capture_default_str();
  add_common(fidelity_cmd, fidelity_common);

  CommonFlags continuum_common;
  ContinuumFlags continuum_flags;
  CLI::App* continuum_cmd =
      app.add_subcommand("continuum-compare", "Discrete hypothetical purity versus the SDE ensemble");
  continuum_cmd->add_option("--delta", continuum_flags.delta, "Measurement precision")->capture_default_str();
  continuum_cmd->add_option("--n-max", continuum_flags.n_max, "Largest measurement count (default: reaches t = 1)");
  continuum_cmd->add_option("--points", continuum_flags.points, "Grid points including t = 0")
      ->capture_default_str();
  continuum_cmd->add_option("--dt", continuum_flags.dt, "SDE time step")->capture_default_str();
  continuum_cmd->add_option("--trajectories", continuum_flags.trajectories, "Trajectories per ensemble")
      ->capture_default_str();
  continuum_cmd->add_option("--time-convention", continuum_flags.time_convention, "Step-to-time mapping")
      ->check(CLI::IsMember({"nominal", "matched"}))
      ->capture_default_str();
  add_common(continuum_cmd, continuum_common);

  CommonFlags validate_common;
  ValidateFlags validate_flags;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Run the invariant battery");
  validate_cmd->add_option("--delta-list", validate_flags.delta_list, "Comma-separated precisions")
      ->capture_default_str();
  validate_cmd->add_flag("--quick", validate_flags.quick, "Fewer samples");
  validate_cmd->add_option("--inject-noise-scale", validate_flags.inject_noise_scale)
      ->group("")
      ->capture_default_str();
  add_common(validate_cmd, validate_common);

  std::vector<std::string> argv_storage{"unsharp"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kArtifactVersion) + "\n" : app.help());
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (fidelity_cmd->parsed()) {
      if (auto advisory = MeasurementSettings(fidelity_flags.delta).continuum_advisory()) {
        err << "warning: " << *advisory << "\n";
      }
      const OutputTable table = fidelity_curve(fidelity_flags, fidelity_common);
      Json flags = {{"delta", fidelity_flags.delta},
                    {"n_grid", fidelity_flags.n_grid},
                    {"trials", fidelity_flags.trials},
                    {"strategy", fidelity_flags.strategy},
                    {"estimator", fidelity_flags.estimator}};
      emit(table, "fidelity-curve", fidelity_common, std::move(flags), out);
      return 0;
    }
    if (continuum_cmd->parsed()) {
      if (auto advisory = MeasurementSettings(continuum_flags.delta).continuum_advisory()) {
        err << "warning: " << *advisory << "\n";
      }
      const OutputTable table = continuum_compare(continuum_flags, continuum_common);
      Json flags = {{"delta", continuum_flags.delta},
                    {"n_max", continuum_flags.n_max},
                    {"points", continuum_flags.points},
                    {"dt", continuum_flags.dt},
                    {"trajectories", continuum_flags.trajectories},
                    {"time_convention", continuum_flags.time_convention}};
      emit(table, "continuum-compare", continuum_common, std::move(flags), out);
      return 0;
    }
    ValidationOptions options;
    options.precisions = parse_list<double>(validate_flags.delta_list, "--delta-list");
    options.quick = validate_flags.quick;
    options.seed = validate_common.seed;
    options.injected_noise_scale = validate_flags.inject_noise_scale;
    const std::vector<CheckResult> checks = run_validation(options);

    const std::vector<std::string> columns{"check", "value", "threshold", "status"};
    bool all_passed = true;
    std::string text;
    if (validate_common.format == "json") {
      Json rows = Json::array();
      for (const CheckResult& c : checks) {
        all_passed = all_passed && c.passed;
        rows.push_back({{"check", c.name},
                        {"value", c.value},
                        {"threshold", c.threshold},
                        {"status", c.passed ? "PASS" : "FAIL"}});
      }
      Json document;
      document["meta"] = {{"command", "validate"},
                          {"artifact_version", kArtifactVersion},
                          {"seed", validate_common.seed},
                          {"flags", {{"delta_list", validate_flags.delta_list}, {"quick", validate_flags.quick}}},
                          {"columns", columns}};
      document["rows"] = std::move(rows);
      text = document.dump(2) + "\n";
    } else {
      std::ostringstream listing;
      listing << "check,value,threshold,status\n";
      for (const CheckResult& c : checks) {
        all_passed = all_passed && c.passed;
        listing << c.name << ',' << format_number(c.value) << ',' << format_number(c.threshold) << ','
                << (c.passed ? "PASS" : "FAIL") << '\n';
      }
      text = listing.str();
    }
    write_text(text, validate_common, out);
    if (!all_passed) {
      err << "validation failed:";
      for (const CheckResult& c : checks) {
        if (!c.passed) err << ' ' << c.name;
      }
      err << "\n";
      return 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace unsharp
