#include "passim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "passim/csv.hpp"
#include "passim/errors.hpp"

namespace passim {

namespace {

using nlohmann::json;

json route_to_json(const RouteMeta& route) {
  json lanes = json::array();
  for (const auto& lane : route.lanes) {
    json blocked = json::array();
    for (const auto& range : lane.blocked) {
      blocked.push_back({range.from_s, range.to_s});
    }
    lanes.push_back({{"id", lane.id}, {"adjacent", lane.adjacent}, {"blocked", blocked}});
  }
  json obstacles = json::array();
  for (const auto& o : route.obstacles) {
    obstacles.push_back({{"lane_id", o.lane_id}, {"s", o.s}});
  }
  return {{"speed_limit", route.speed_limit}, {"lanes", lanes}, {"obstacles", obstacles}};
}

RouteMeta route_from_json(const json& j) {
  RouteMeta route;
  route.speed_limit = j.at("speed_limit").get<double>();
  for (const auto& lane_json : j.at("lanes")) {
    LaneSpec lane;
    lane.id = lane_json.at("id").get<int>();
    lane.adjacent = lane_json.at("adjacent").get<std::vector<int>>();
    for (const auto& range : lane_json.at("blocked")) {
      lane.blocked.push_back({range.at(0).get<double>(), range.at(1).get<double>()});
    }
    route.lanes.push_back(std::move(lane));
  }
  for (const auto& o : j.at("obstacles")) {
    route.obstacles.push_back({o.at("lane_id").get<int>(), o.at("s").get<double>()});
  }
  return route;
}

}  // namespace

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  json events = json::array();
  for (const auto& event : manifest.events) {
    json runs = json::array();
    for (const auto& run : event.runs) {
      runs.push_back({{"run_id", run.run_id},
                      {"policy", run.policy_label},
                      {"file", run.file},
                      {"ego", run.ego_id},
                      {"completed", run.diagnostics.completed},
                      {"merged", run.diagnostics.merged},
                      {"merge_commit_t", run.diagnostics.merge_commit_time},
                      {"merge_complete_t", run.diagnostics.merge_complete_time},
                      {"resistance_triggers", run.diagnostics.resistance_triggers},
                      {"end_time", run.diagnostics.end_time}});
    }
    events.push_back({{"event_id", event.event_id},
                      {"kind", event.kind},
                      {"seed", event.seed},
                      {"window", {{"start_s", event.window.start_s}, {"end_s", event.window.end_s}}},
                      {"route", route_to_json(event.route)},
                      {"runs", runs}});
  }
  const json doc = {{"dt", manifest.dt}, {"events", events}};
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw SchemaError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
  }
  DatasetManifest manifest;
  try {
    manifest.dt = doc.at("dt").get<double>();
    for (const auto& event_json : doc.at("events")) {
      EventEntry event;
      event.event_id = event_json.at("event_id").get<std::string>();
      event.kind = event_json.at("kind").get<std::string>();
      event.seed = event_json.at("seed").get<std::uint64_t>();
      event.window.event_id = event.event_id;
      event.window.start_s = event_json.at("window").at("start_s").get<double>();
      event.window.end_s = event_json.at("window").at("end_s").get<double>();
      event.route = route_from_json(event_json.at("route"));
      for (const auto& run_json : event_json.at("runs")) {
        RunEntry run;
        run.run_id = run_json.at("run_id").get<std::string>();
        run.policy_label = run_json.at("policy").get<std::string>();
        run.file = run_json.at("file").get<std::string>();
        run.ego_id = run_json.at("ego").get<std::string>();
        run.diagnostics.completed = run_json.at("completed").get<bool>();
        run.diagnostics.merged = run_json.at("merged").get<bool>();
        run.diagnostics.merge_commit_time = run_json.at("merge_commit_t").get<double>();
        run.diagnostics.merge_complete_time = run_json.at("merge_complete_t").get<double>();
        run.diagnostics.resistance_triggers = run_json.at("resistance_triggers").get<int>();
        run.diagnostics.end_time = run_json.at("end_time").get<double>();
        event.runs.push_back(std::move(run));
      }
      manifest.events.push_back(std::move(event));
    }
  } catch (const json::exception& e) {
    throw SchemaError("manifest '" + path.string() + "': " + e.what());
  }
  return manifest;
}

namespace {

std::string kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kIncident: return "incident";
    case ScenarioKind::kOffRamp: return "off-ramp";
    case ScenarioKind::kOnRamp: return "on-ramp";
  }
  return "unknown";
}

}  // namespace

DatasetManifest write_dataset(const std::filesystem::path& dir, const CohortDataset& cohort) {
  std::filesystem::create_directories(dir / "trajectories");
  DatasetManifest manifest;
  if (!cohort.events.empty()) manifest.dt = cohort.events.front().spec.dt;
  for (const auto& event : cohort.events) {
    EventEntry entry;
    entry.event_id = event.spec.event_id;
    entry.kind = kind_name(event.spec.kind);
    entry.seed = event.seed;
    entry.window = scenario_window(event.spec);
    entry.route = scenario_route_meta(event.spec);
    std::filesystem::create_directories(dir / "trajectories" / event.spec.event_id);
    for (const auto& run : event.runs) {
      RunEntry run_entry;
      run_entry.run_id = run.run_id;
      run_entry.policy_label = run.policy.label;
      run_entry.file = "trajectories/" + event.spec.event_id + "/" + run.run_id + ".csv";
      run_entry.diagnostics = run.result.diagnostics;
      write_tracks_csv(dir / run_entry.file, run.result.tracks);
      entry.runs.push_back(std::move(run_entry));
    }
    manifest.events.push_back(std::move(entry));
  }
  write_manifest(dir / "manifest.json", manifest);
  return manifest;
}

std::vector<ScenarioSpec> preset_scenarios(const SimulateConfig& sim) {
  if (sim.preset != "paper-desk") {
    throw ConfigError("unknown scenario preset '" + sim.preset + "'");
  }
  return desk_scenarios(sim.events);
}

SimulateOutcome cmd_simulate(const RunConfig& config) {
  config.validate();
  const auto scenarios = preset_scenarios(config.simulate);
  const auto policies = desk_policies(config.simulate.runs);
  const CohortDataset cohort = generate_cohort(scenarios, policies, config.simulate.seed);
  std::filesystem::create_directories(config.out_dir);
  write_dataset(config.out_dir, cohort);
  SimulateOutcome outcome;
  outcome.manifest_path = config.out_dir / "manifest.json";
  outcome.events = static_cast<int>(cohort.events.size());
  outcome.runs = cohort.events.empty() ? 0 : static_cast<int>(cohort.events.front().runs.size());
  return outcome;
}

// Restricts the ego track to its event-window crossing. Falls back to the
// full remaining track for incomplete travels.
VehicleTrack trim_track_to_window(const VehicleTrack& ego, const EventWindow& window,
                                  double* travel_time_out, bool* completed_out) {
  double t_enter = ego.records.front().time;
  double t_exit = ego.records.back().time;
  bool completed = true;
  double tt = 0.0;
  try {
    tt = travel_time(ego, window);
  } catch (const IncompleteTravelError&) {
    completed = false;
  }
  if (completed) {
    // Recompute the interpolated crossing instants.
    const auto cross = [&](double target) {
      const auto& recs = ego.records;
      if (recs.front().s >= target) return recs.front().time;
      for (std::size_t i = 1; i < recs.size(); ++i) {
        if (recs[i].s >= target) {
          const double ds = recs[i].s - recs[i - 1].s;
          const double w = (ds > 0.0) ? (target - recs[i - 1].s) / ds : 1.0;
          return recs[i - 1].time + w * (recs[i].time - recs[i - 1].time);
        }
      }
      return recs.back().time;
    };
    t_enter = cross(window.start_s);
    t_exit = cross(window.end_s);
  } else {
    // Use whatever portion lies past the window start.
    const auto& recs = ego.records;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (recs[i].s >= window.start_s) {
        t_enter = recs[i].time;
        break;
      }
    }
  }

  VehicleTrack trimmed;
  trimmed.vehicle_id = ego.vehicle_id;
  for (const auto& rec : ego.records) {
    if (rec.time >= t_enter - 1e-9 && rec.time <= t_exit + 1e-9) {
      trimmed.records.push_back(rec);
    }
  }
  if (trimmed.records.empty()) trimmed.records.push_back(ego.records.back());
  if (travel_time_out != nullptr) *travel_time_out = completed ? tt : -1.0;
  if (completed_out != nullptr) *completed_out = completed;
  return trimmed;
}

namespace {

struct EventStats {
  std::vector<double> pass_aggs;
  std::vector<double> baseline_aggs;
  std::vector<double> travel_times;
  std::vector<std::string> run_ids;
};

void finish_metric_events(const std::string& event_id, const EventStats& stats,
                          std::span<const double> aggregates,
                          std::vector<EventEvaluation>& out,
                          std::vector<std::string>& warnings, const char* metric_name) {
  if (stats.travel_times.size() < 2) {
    warnings.push_back("event " + event_id + " excluded from " + metric_name +
                       " ranking: fewer than two completed vehicles");
    return;
  }
  EventEvaluation eval;
  eval.event_id = event_id;
  for (std::size_t i = 0; i < aggregates.size(); ++i) {
    eval.vehicles.push_back({stats.run_ids[i], aggregates[i], stats.travel_times[i]});
  }
  try {
    eval.r = spearman(aggregates, stats.travel_times);
  } catch (const CorrelationUndefinedError&) {
    warnings.push_back("event " + event_id + " excluded from " + metric_name +
                       " ranking: correlation undefined (constant vector)");
    return;
  }
  eval.r_squared = eval.r * eval.r;
  out.push_back(std::move(eval));
}

double mean_r2(const std::vector<EventEvaluation>& events) {
  if (events.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : events) sum += e.r_squared;
  return sum / static_cast<double>(events.size());
}

EvaluateOutcome evaluate_dataset(const RunConfig& config, bool write_tick_csv,
                                 const std::filesystem::path& tick_dir,
                                 CalibrationDataset* cache_out) {
  config.validate();
  if (config.dataset_dir.empty()) {
    throw ConfigError("no dataset directory configured");
  }
  const DatasetManifest manifest = read_manifest(config.dataset_dir / "manifest.json");
  if (manifest.events.empty()) throw InputError("dataset contains no events");

  EvaluateOutcome outcome;
  const RoutePolyline* route = config.route ? &*config.route : nullptr;
  for (const auto& event : manifest.events) {
    EventStats stats;
    int incomplete = 0;
    for (const auto& run : event.runs) {
      const auto tracks = read_tracks_csv(config.dataset_dir / run.file, route);
      const VehicleTrack* ego = nullptr;
      std::vector<VehicleTrack> others;
      for (const auto& track : tracks) {
        if (track.vehicle_id == run.ego_id) {
          ego = &track;
        } else {
          others.push_back(track);
        }
      }
      if (ego == nullptr) {
        throw SchemaError("run " + run.run_id + " of event " + event.event_id +
                          " has no ego track '" + run.ego_id + "'");
      }

      double tt = -1.0;
      bool completed = false;
      const VehicleTrack trimmed = trim_track_to_window(*ego, event.window, &tt, &completed);
      const auto snapshots = build_snapshots(trimmed, others, event.route, config.snapshot);
      const PassSeries series = evaluate_series(snapshots, config.pass);
      std::vector<double> baseline(snapshots.size());
      for (std::size_t i = 0; i < snapshots.size(); ++i) {
        baseline[i] = baseline_instant(snapshots[i], config.baseline);
      }
      const double baseline_agg = baseline_aggregate(baseline);

      if (write_tick_csv) {
        std::filesystem::create_directories(tick_dir / event.event_id);
        write_metrics_csv(tick_dir / event.event_id / (run.run_id + ".csv"), run.run_id,
                          snapshots, series, baseline);
      }
      if (cache_out != nullptr) {
        CachedVehicleSeries cached;
        cached.event_id = event.event_id;
        cached.vehicle_id = run.run_id;
        cached.available = series.available;
        cached.delta = series.delta;
        cached.travel_time = tt;
        cached.completed = completed;
        cache_out->series.push_back(std::move(cached));
      }

      RunEvaluation run_eval;
      run_eval.event_id = event.event_id;
      run_eval.run_id = run.run_id;
      run_eval.pass_aggregate = series.mean_pass;
      run_eval.baseline_aggregate = baseline_agg;
      run_eval.travel_time = tt;
      run_eval.completed = completed;
      run_eval.speeding_ticks = series.speeding_ticks;
      outcome.runs.push_back(run_eval);

      if (completed) {
        stats.pass_aggs.push_back(series.mean_pass);
        stats.baseline_aggs.push_back(baseline_agg);
        stats.travel_times.push_back(tt);
        stats.run_ids.push_back(run.run_id);
      } else {
        ++incomplete;
      }
      if (series.speeding_ticks > 0) {
        outcome.warnings.push_back("run " + run.run_id + " of event " + event.event_id +
                                   ": ego above the speed limit on " +
                                   std::to_string(series.speeding_ticks) + " tick(s)");
      }
    }
    if (incomplete > 0) {
      outcome.warnings.push_back("event " + event.event_id + ": " + std::to_string(incomplete) +
                                 " incomplete travel(s) excluded from ranking");
    }
    finish_metric_events(event.event_id, stats, stats.pass_aggs, outcome.pass_events,
                         outcome.warnings, "pass");
    finish_metric_events(event.event_id, stats, stats.baseline_aggs, outcome.baseline_events,
                         outcome.warnings, "baseline");
  }
  outcome.pass_mean_r2 = mean_r2(outcome.pass_events);
  outcome.baseline_mean_r2 = mean_r2(outcome.baseline_events);
  return outcome;
}

json events_to_json(const std::vector<EventEvaluation>& events) {
  json arr = json::array();
  for (const auto& e : events) {
    arr.push_back({{"event_id", e.event_id},
                   {"r", e.r},
                   {"r_squared", e.r_squared},
                   {"vehicles", e.vehicles.size()}});
  }
  return arr;
}

void write_evaluation_report(const std::filesystem::path& dir, const EvaluateOutcome& outcome,
                             const char* file_stem) {
  // Fractional ranks within each event, over completed runs only.
  struct Ranks {
    double travel_time = 0.0, pass = 0.0, baseline = 0.0;
    bool ranked = false;
  };
  std::vector<Ranks> ranks(outcome.runs.size());
  std::vector<std::string> event_ids;
  for (const auto& run : outcome.runs) {
    if (std::find(event_ids.begin(), event_ids.end(), run.event_id) == event_ids.end()) {
      event_ids.push_back(run.event_id);
    }
  }
  for (const auto& event_id : event_ids) {
    std::vector<std::size_t> indices;
    std::vector<double> tts, passes, baselines;
    for (std::size_t i = 0; i < outcome.runs.size(); ++i) {
      const auto& run = outcome.runs[i];
      if (run.event_id != event_id || !run.completed) continue;
      indices.push_back(i);
      tts.push_back(run.travel_time);
      passes.push_back(run.pass_aggregate);
      baselines.push_back(run.baseline_aggregate);
    }
    if (indices.empty()) continue;
    const auto tt_ranks = rank_with_ties(tts);
    const auto pass_ranks = rank_with_ties(passes);
    const auto baseline_ranks = rank_with_ties(baselines);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      ranks[indices[j]] = {tt_ranks[j], pass_ranks[j], baseline_ranks[j], true};
    }
  }

  json runs = json::array();
  for (std::size_t i = 0; i < outcome.runs.size(); ++i) {
    const auto& run = outcome.runs[i];
    json entry = {{"event_id", run.event_id},
                  {"run_id", run.run_id},
                  {"pass_aggregate", run.pass_aggregate},
                  {"baseline_aggregate", run.baseline_aggregate},
                  {"travel_time", run.travel_time},
                  {"completed", run.completed},
                  {"speeding_ticks", run.speeding_ticks}};
    if (ranks[i].ranked) {
      entry["rank_travel_time"] = ranks[i].travel_time;
      entry["rank_pass"] = ranks[i].pass;
      entry["rank_baseline"] = ranks[i].baseline;
    }
    runs.push_back(std::move(entry));
  }
  const json doc = {{"runs", runs},
                    {"pass_events", events_to_json(outcome.pass_events)},
                    {"baseline_events", events_to_json(outcome.baseline_events)},
                    {"pass_mean_r_squared", outcome.pass_mean_r2},
                    {"baseline_mean_r_squared", outcome.baseline_mean_r2},
                    {"warnings", outcome.warnings}};
  std::ofstream out(dir / (std::string(file_stem) + ".json"));
  out << doc.dump(2) << '\n';

  std::ofstream csv(dir / (std::string(file_stem) + ".csv"));
  csv << "event_id,run_id,pass_aggregate,baseline_aggregate,travel_time,completed,"
         "speeding_ticks,rank_travel_time,rank_pass,rank_baseline\n";
  for (std::size_t i = 0; i < outcome.runs.size(); ++i) {
    const auto& run = outcome.runs[i];
    csv << run.event_id << ',' << run.run_id << ',' << format_double(run.pass_aggregate) << ','
        << format_double(run.baseline_aggregate) << ',' << format_double(run.travel_time) << ','
        << (run.completed ? 1 : 0) << ',' << run.speeding_ticks;
    if (ranks[i].ranked) {
      csv << ',' << format_double(ranks[i].travel_time) << ',' << format_double(ranks[i].pass)
          << ',' << format_double(ranks[i].baseline) << '\n';
    } else {
      csv << ",,,\n";
    }
  }
}

}  // namespace

EvaluateOutcome cmd_evaluate(const RunConfig& config, bool write_tick_csv) {
  std::filesystem::create_directories(config.out_dir);
  const auto outcome =
      evaluate_dataset(config, write_tick_csv, config.out_dir / "metrics", nullptr);
  write_evaluation_report(config.out_dir, outcome, "evaluation_report");
  return outcome;
}

CalibrationDataset build_calibration_cache(const RunConfig& config,
                                           const std::filesystem::path& dataset_dir,
                                           std::vector<std::string>* warnings) {
  RunConfig local = config;
  local.dataset_dir = dataset_dir;
  CalibrationDataset cache;
  const auto outcome = evaluate_dataset(local, false, {}, &cache);
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), outcome.warnings.begin(), outcome.warnings.end());
  }
  return cache;
}

CalibrateOutcome cmd_calibrate(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  CalibrateOutcome outcome;
  std::vector<std::string> warnings;
  const CalibrationDataset cache =
      build_calibration_cache(config, config.dataset_dir, &warnings);
  outcome.result = grid_search(cache, config.grid);
  outcome.result.warnings.insert(outcome.result.warnings.end(), warnings.begin(), warnings.end());

  outcome.grid_csv = config.out_dir / "grid.csv";
  std::ofstream grid(outcome.grid_csv);
  grid << "k1,k2,loss\n";
  for (const auto& point : outcome.result.grid) {
    grid << format_double(point.k1) << ',' << format_double(point.k2) << ','
         << format_double(point.loss) << '\n';
  }

  json events = json::array();
  for (const auto& e : outcome.result.events) {
    events.push_back(
        {{"event_id", e.event_id}, {"r", e.r}, {"r_squared", e.r_squared},
         {"vehicles", e.vehicles.size()}});
  }
  const json doc = {{"k1", outcome.result.k1},
                    {"k2", outcome.result.k2},
                    {"loss", outcome.result.loss},
                    {"mean_r_squared", outcome.result.mean_r_squared},
                    {"events", events},
                    {"warnings", outcome.result.warnings}};
  outcome.report_json = config.out_dir / "calibration_report.json";
  std::ofstream report(outcome.report_json);
  report << doc.dump(2) << '\n';

  std::ofstream text(config.out_dir / "calibration_report.txt");
  text << "calibration (grid step " << config.grid.step << ")\n"
       << "  best k1 = " << format_double(outcome.result.k1) << '\n'
       << "  best k2 = " << format_double(outcome.result.k2) << '\n'
       << "  loss    = " << format_double(outcome.result.loss) << '\n'
       << "  mean rank-R^2 = " << format_double(outcome.result.mean_r_squared) << '\n';
  for (const auto& e : outcome.result.events) {
    text << "  event " << e.event_id << ": r = " << format_double(e.r)
         << ", R^2 = " << format_double(e.r_squared) << " (" << e.vehicles.size()
         << " vehicles)\n";
  }
  for (const auto& w : outcome.result.warnings) text << "  warning: " << w << '\n';
  return outcome;
}

EvaluateOutcome cmd_compare(const RunConfig& config, double k1, double k2) {
  RunConfig local = config;
  local.pass.k1 = k1;
  local.pass.k2 = k2;
  local.validate();
  std::filesystem::create_directories(local.out_dir);
  const auto outcome = evaluate_dataset(local, false, {}, nullptr);

  // Rank scatter: one row per completed run, ranks computed within events.
  std::ofstream scatter(local.out_dir / "compare_scatter.csv");
  scatter << "event_id,run_id,travel_time,pass_aggregate,baseline_aggregate,"
             "rank_travel_time,rank_pass,rank_baseline\n";
  for (const auto& event : outcome.pass_events) {
    std::vector<double> tts, passes, baselines;
    const EventEvaluation* baseline_event = nullptr;
    for (const auto& be : outcome.baseline_events) {
      if (be.event_id == event.event_id) baseline_event = &be;
    }
    for (std::size_t i = 0; i < event.vehicles.size(); ++i) {
      tts.push_back(event.vehicles[i].travel_time);
      passes.push_back(event.vehicles[i].aggregate_metric);
      baselines.push_back(baseline_event ? baseline_event->vehicles[i].aggregate_metric : 0.0);
    }
    const auto tt_ranks = rank_with_ties(tts);
    const auto pass_ranks = rank_with_ties(passes);
    const auto baseline_ranks = rank_with_ties(baselines);
    for (std::size_t i = 0; i < event.vehicles.size(); ++i) {
      scatter << event.event_id << ',' << event.vehicles[i].vehicle_id << ','
              << format_double(tts[i]) << ',' << format_double(passes[i]) << ','
              << format_double(baselines[i]) << ',' << format_double(tt_ranks[i]) << ','
              << format_double(pass_ranks[i]) << ',' << format_double(baseline_ranks[i]) << '\n';
    }
  }

  const json doc = {
      {"k1", k1},
      {"k2", k2},
      {"pass_events", events_to_json(outcome.pass_events)},
      {"baseline_events", events_to_json(outcome.baseline_events)},
      {"pass_mean_r_squared", outcome.pass_mean_r2},
      {"baseline_mean_r_squared", outcome.baseline_mean_r2},
      {"reference_note",
       "External reference values, original study data (confidential, not reproduced "
       "by this run): pass_mean_r_squared=0.913, baseline_mean_r_squared=0.269"},
      {"warnings", outcome.warnings}};
  std::ofstream summary(local.out_dir / "compare_summary.json");
  summary << doc.dump(2) << '\n';
  return outcome;
}

int cmd_report(const RunConfig& config, bool as_json, std::string& out_text) {
  json doc;
  std::vector<std::string> warnings;
  const auto load_json = [](const std::filesystem::path& p) -> std::optional<json> {
    std::ifstream in(p);
    if (!in) return std::nullopt;
    json j;
    try {
      in >> j;
    } catch (const json::exception&) {
      return std::nullopt;
    }
    return j;
  };

  if (auto calib = load_json(config.out_dir / "calibration_report.json")) {
    doc["calibration"] = *calib;
    for (const auto& w : (*calib)["warnings"]) warnings.push_back(w.get<std::string>());
  }
  if (auto eval = load_json(config.out_dir / "evaluation_report.json")) {
    doc["evaluation"] = {{"pass_mean_r_squared", (*eval)["pass_mean_r_squared"]},
                         {"baseline_mean_r_squared", (*eval)["baseline_mean_r_squared"]},
                         {"pass_events", (*eval)["pass_events"]},
                         {"baseline_events", (*eval)["baseline_events"]}};
    for (const auto& w : (*eval)["warnings"]) warnings.push_back(w.get<std::string>());
  }
  if (auto compare = load_json(config.out_dir / "compare_summary.json")) {
    doc["compare"] = *compare;
    for (const auto& w : (*compare)["warnings"]) warnings.push_back(w.get<std::string>());
  }
  if (doc.empty()) {
    out_text = "no artifacts found under " + config.out_dir.string() + "\n";
    return 2;
  }
  doc["warnings_total"] = warnings.size();

  if (as_json) {
    out_text = doc.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "summary of " << config.out_dir.string() << "\n";
    if (doc.contains("calibration")) {
      const auto& c = doc["calibration"];
      text << "  calibrated k1 = " << c["k1"].get<double>()
           << ", k2 = " << c["k2"].get<double>() << ", loss = " << c["loss"].get<double>()
           << ", mean rank-R^2 = " << c["mean_r_squared"].get<double>() << "\n";
      for (const auto& e : c["events"]) {
        text << "    event " << e["event_id"].get<std::string>()
             << ": R^2 = " << e["r_squared"].get<double>() << "\n";
      }
    }
    if (doc.contains("compare")) {
      const auto& c = doc["compare"];
      text << "  comparison at (k1 = " << c["k1"].get<double>()
           << ", k2 = " << c["k2"].get<double>() << ")\n"
           << "    pass mean rank-R^2     = " << c["pass_mean_r_squared"].get<double>() << "\n"
           << "    baseline mean rank-R^2 = " << c["baseline_mean_r_squared"].get<double>()
           << "\n    note: " << c["reference_note"].get<std::string>() << "\n";
    } else if (doc.contains("evaluation")) {
      const auto& e = doc["evaluation"];
      text << "  pass mean rank-R^2     = " << e["pass_mean_r_squared"].get<double>() << "\n"
           << "  baseline mean rank-R^2 = " << e["baseline_mean_r_squared"].get<double>() << "\n";
    }
    text << "  warnings: " << warnings.size() << "\n";
    for (const auto& w : warnings) text << "    " << w << "\n";
    out_text = text.str();
  }
  return (config.strict && !warnings.empty()) ? 1 : 0;
}

std::vector<SceneSnapshot> run_snapshots(const SimulatedEvent& event, const SimulatedRun& run,
                                         const SnapshotOptions& options,
                                         double* travel_time_out, bool* completed_out) {
  const EventWindow window = scenario_window(event.spec);
  const RouteMeta route = scenario_route_meta(event.spec);
  const auto& tracks = run.result.tracks;
  std::vector<VehicleTrack> others(tracks.begin() + 1, tracks.end());
  const VehicleTrack trimmed =
      trim_track_to_window(tracks.front(), window, travel_time_out, completed_out);
  return build_snapshots(trimmed, others, route, options);
}

}  // namespace passim
