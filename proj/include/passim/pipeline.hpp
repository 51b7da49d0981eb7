#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "passim/calibration.hpp"
#include "passim/config.hpp"
#include "passim/simulator.hpp"

namespace passim {

// On-disk dataset: a manifest plus one trajectory CSV per run.
struct RunEntry {
  std::string run_id;
  std::string policy_label;
  std::string file;      // relative to the dataset directory
  std::string ego_id = "ego";
  RunDiagnostics diagnostics;
};

struct EventEntry {
  std::string event_id;
  std::string kind;
  std::uint64_t seed = 0;
  EventWindow window;
  RouteMeta route;
  std::vector<RunEntry> runs;
};

struct DatasetManifest {
  double dt = 0.05;
  std::vector<EventEntry> events;
};

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::filesystem::path& path);

// Writes the cohort to `dir` (manifest.json + trajectories/<event>/<run>.csv).
DatasetManifest write_dataset(const std::filesystem::path& dir, const CohortDataset& cohort);

struct SimulateOutcome {
  std::filesystem::path manifest_path;
  int events = 0;
  int runs = 0;
};

// Per-run evaluation results shared by evaluate/compare.
struct RunEvaluation {
  std::string event_id;
  std::string run_id;
  double pass_aggregate = 0.0;
  double baseline_aggregate = 0.0;
  double travel_time = 0.0;
  bool completed = true;
  int speeding_ticks = 0;
};

struct EvaluateOutcome {
  std::vector<RunEvaluation> runs;
  std::vector<EventEvaluation> pass_events;
  std::vector<EventEvaluation> baseline_events;
  double pass_mean_r2 = 0.0;
  double baseline_mean_r2 = 0.0;
  std::vector<std::string> warnings;
};

struct CalibrateOutcome {
  CalibrationResult result;
  std::filesystem::path grid_csv;
  std::filesystem::path report_json;
};

// simulate: generate the configured cohort under config.out_dir.
SimulateOutcome cmd_simulate(const RunConfig& config);

// evaluate: per-tick metric CSVs plus an evaluation report, using the
// coefficients from the config.
EvaluateOutcome cmd_evaluate(const RunConfig& config, bool write_tick_csv = true);

// calibrate: exhaustive grid search over the cached series.
CalibrateOutcome cmd_calibrate(const RunConfig& config);

// compare: rank-scatter data and per-metric rank statistics at the given
// calibrated coefficients.
EvaluateOutcome cmd_compare(const RunConfig& config, double k1, double k2);

// report: consolidated summary of whatever artifacts exist in out_dir.
// Returns the process exit code (non-zero in strict mode with warnings).
int cmd_report(const RunConfig& config, bool as_json, std::string& out_text);

// Builds the (k1, k2)-independent calibration cache for a dataset on disk.
CalibrationDataset build_calibration_cache(const RunConfig& config,
                                           const std::filesystem::path& dataset_dir,
                                           std::vector<std::string>* warnings = nullptr);

// In-memory helpers shared with the test suites.
std::vector<ScenarioSpec> preset_scenarios(const SimulateConfig& sim);
std::vector<SceneSnapshot> run_snapshots(const SimulatedEvent& event, const SimulatedRun& run,
                                         const SnapshotOptions& options,
                                         double* travel_time_out, bool* completed_out);

// Restricts an ego track to its event-window crossing; falls back to the
// remaining track (completed=false) for incomplete travels.
VehicleTrack trim_track_to_window(const VehicleTrack& ego, const EventWindow& window,
                                  double* travel_time_out, bool* completed_out);

}  // namespace passim
