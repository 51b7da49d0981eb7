// passim: simulate mandatory-lane-change cohorts, evaluate the projected
// attainable speed metric alongside a baseline, calibrate the utilization
// coefficients against travel time, and report the results.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "passim/errors.hpp"
#include "passim/pipeline.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string dataset_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> events;
  std::optional<int> runs;
  std::optional<std::pair<double, double>> k1_range;
  std::optional<std::pair<double, double>> k2_range;
  std::optional<double> step;
  bool strict = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Structured config file (JSON)");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--dataset", flags.dataset_dir, "Dataset directory (manifest.json inside)");
  cmd->add_option("--seed", flags.seed, "Base random seed");
  cmd->add_option("--events", flags.events, "Number of events to simulate");
  cmd->add_option("--runs", flags.runs, "Ego runs per event");
  cmd->add_option("--k1-range", flags.k1_range, "Calibration k1 range (min max)");
  cmd->add_option("--k2-range", flags.k2_range, "Calibration k2 range (min max)");
  cmd->add_option("--step", flags.step, "Calibration grid step");
  cmd->add_flag("--strict", flags.strict, "Treat warnings as errors");
}

passim::RunConfig make_config(const CommonFlags& flags) {
  passim::RunConfig config;
  if (!flags.config_path.empty()) config = passim::load_config(flags.config_path);
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (!flags.dataset_dir.empty()) config.dataset_dir = flags.dataset_dir;
  if (flags.seed) config.simulate.seed = *flags.seed;
  if (flags.events) config.simulate.events = *flags.events;
  if (flags.runs) config.simulate.runs = *flags.runs;
  if (flags.k1_range) {
    config.grid.k1_min = flags.k1_range->first;
    config.grid.k1_max = flags.k1_range->second;
  }
  if (flags.k2_range) {
    config.grid.k2_min = flags.k2_range->first;
    config.grid.k2_max = flags.k2_range->second;
  }
  if (flags.step) config.grid.step = *flags.step;
  config.strict = config.strict || flags.strict;
  if (config.dataset_dir.empty()) config.dataset_dir = config.out_dir;
  return config;
}

int warnings_exit(const passim::RunConfig& config, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return (config.strict && !warnings.empty()) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projected attainable speed efficiency metric toolchain"};
  app.require_subcommand(1);

  CommonFlags flags;
  bool as_json = false;
  double k1_opt = 0.0, k2_opt = 0.0;

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic trajectory cohort");
  add_common_flags(simulate, flags);
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate metrics over a dataset");
  add_common_flags(evaluate, flags);
  auto* calibrate = app.add_subcommand("calibrate", "Grid-search k1, k2 against travel time");
  add_common_flags(calibrate, flags);
  auto* compare = app.add_subcommand("compare", "Rank comparison of metric vs baseline");
  add_common_flags(compare, flags);
  compare->add_option("--k1", k1_opt, "Calibrated k1");
  compare->add_option("--k2", k2_opt, "Calibrated k2");
  auto* report = app.add_subcommand("report", "Consolidated summary of prior outputs");
  add_common_flags(report, flags);
  report->add_flag("--json", as_json, "Emit machine-readable JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    const passim::RunConfig config = make_config(flags);
    if (simulate->parsed()) {
      const auto outcome = passim::cmd_simulate(config);
      std::cout << "wrote " << outcome.events << " event(s) x " << outcome.runs
                << " run(s) to " << outcome.manifest_path.parent_path().string() << '\n';
      return 0;
    }
    if (evaluate->parsed()) {
      const auto outcome = passim::cmd_evaluate(config);
      std::cout << "pass mean rank-R^2     = " << outcome.pass_mean_r2 << '\n'
                << "baseline mean rank-R^2 = " << outcome.baseline_mean_r2 << '\n'
                << "report: " << (config.out_dir / "evaluation_report.json").string() << '\n';
      return warnings_exit(config, outcome.warnings);
    }
    if (calibrate->parsed()) {
      const auto outcome = passim::cmd_calibrate(config);
      std::cout << "best k1 = " << outcome.result.k1 << ", k2 = " << outcome.result.k2
                << ", loss = " << outcome.result.loss
                << ", mean rank-R^2 = " << outcome.result.mean_r_squared << '\n'
                << "grid: " << outcome.grid_csv.string() << '\n';
      return warnings_exit(config, outcome.result.warnings);
    }
    if (compare->parsed()) {
      const double k1 = compare->count("--k1") ? k1_opt : config.pass.k1;
      const double k2 = compare->count("--k2") ? k2_opt : config.pass.k2;
      const auto outcome = passim::cmd_compare(config, k1, k2);
      std::cout << "pass mean rank-R^2     = " << outcome.pass_mean_r2 << '\n'
                << "baseline mean rank-R^2 = " << outcome.baseline_mean_r2 << '\n'
                << "scatter: " << (config.out_dir / "compare_scatter.csv").string() << '\n';
      return warnings_exit(config, outcome.warnings);
    }
    if (report->parsed()) {
      std::string text;
      const int code = passim::cmd_report(config, as_json, text);
      std::cout << text;
      return code;
    }
  } catch (const passim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
