#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "passim/config.hpp"
#include "passim/csv.hpp"
#include "passim/errors.hpp"
#include "passim/pipeline.hpp"
#include "passim/rng.hpp"
#include "passim/simulator.hpp"

using namespace passim;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("passim_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("trajectory CSV round trip at nine significant digits") {
  const auto dir = temp_dir("roundtrip");
  Rng rng(1);
  std::vector<VehicleTrack> tracks;
  for (int v = 0; v < 3; ++v) {
    VehicleTrack track;
    track.vehicle_id = "veh" + std::to_string(v);
    double s = rng.uniform(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
      const double speed = rng.uniform(0.0, 30.0);
      s += speed * 0.05;
      track.records.push_back({i * 0.05, v % 2, s, speed, rng.uniform(-3.0, 3.0)});
    }
    tracks.push_back(std::move(track));
  }
  write_tracks_csv(dir / "tracks.csv", tracks);
  const auto loaded = read_tracks_csv(dir / "tracks.csv");
  REQUIRE(loaded.size() == tracks.size());
  for (std::size_t v = 0; v < tracks.size(); ++v) {
    REQUIRE(loaded[v].records.size() == tracks[v].records.size());
    CHECK(loaded[v].vehicle_id == tracks[v].vehicle_id);
    for (std::size_t i = 0; i < tracks[v].records.size(); ++i) {
      const auto& a = tracks[v].records[i];
      const auto& b = loaded[v].records[i];
      CHECK(b.lane_id == a.lane_id);
      CHECK(b.time == doctest::Approx(a.time).epsilon(1e-8));
      CHECK(b.s == doctest::Approx(a.s).epsilon(1e-8));
      CHECK(b.speed == doctest::Approx(a.speed).epsilon(1e-8));
      CHECK(b.accel == doctest::Approx(a.accel).epsilon(1e-8));
    }
  }

  // Writing the loaded tracks again reproduces the file byte for byte.
  write_tracks_csv(dir / "tracks2.csv", loaded);
  CHECK(slurp(dir / "tracks.csv") == slurp(dir / "tracks2.csv"));
}

TEST_CASE("trajectory CSV with global coordinates projects onto the route") {
  const auto dir = temp_dir("xyform");
  {
    std::ofstream out(dir / "xy.csv");
    out << "vehicle_id,time,lane_id,x,y,speed,accel\n";
    out << "a,0,0,10,0.5,5,0\n";
    out << "a,0.05,0,10.25,0.5,5,0\n";
  }
  RoutePolyline route({{0.0, 0.0}, {100.0, 0.0}});
  const auto tracks = read_tracks_csv(dir / "xy.csv", &route);
  REQUIRE(tracks.size() == 1);
  CHECK(tracks[0].records[0].s == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(tracks[0].records[1].s == doctest::Approx(10.25).epsilon(1e-9));

  // Without a route the x,y form is rejected.
  CHECK_THROWS_AS(read_tracks_csv(dir / "xy.csv"), SchemaError);
}

TEST_CASE("schema violations carry row numbers") {
  const auto dir = temp_dir("schema");
  {
    std::ofstream out(dir / "bad.csv");
    out << "vehicle_id,time,lane_id,s,speed,accel\n";
    out << "a,0,0,1,5,0\n";
    out << "a,0.05,0,2,banana,0\n";
  }
  try {
    read_tracks_csv(dir / "bad.csv");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }

  {
    std::ofstream out(dir / "nonmono.csv");
    out << "vehicle_id,time,lane_id,s,speed,accel\n";
    out << "a,0.05,0,1,5,0\n";
    out << "a,0.05,0,2,5,0\n";
  }
  CHECK_THROWS_AS(read_tracks_csv(dir / "nonmono.csv"), SchemaError);
  {
    std::ofstream out(dir / "header.csv");
    out << "nope\n";
  }
  CHECK_THROWS_AS(read_tracks_csv(dir / "header.csv"), SchemaError);
}

TEST_CASE("config loading and overrides") {
  const auto dir = temp_dir("config");
  {
    std::ofstream out(dir / "config.json");
    out << R"({
      "pass": {"a1": 1.2, "a2": -2.0, "k1": -0.417, "k2": 0.7, "speeding_policy": "clamp"},
      "baseline": {"d_ref_m": 40.0},
      "snapshot": {"vehicle_length_m": 5.0, "sensing_range_m": 250.0},
      "simulate": {"events": 3, "runs": 5, "seed": 42},
      "grid": {"step": 0.05},
      "out_dir": "somewhere",
      "strict": true
    })";
  }
  const auto cfg = load_config(dir / "config.json");
  CHECK(cfg.pass.accel == 1.2);
  CHECK(cfg.pass.decel == -2.0);
  CHECK(cfg.pass.k1 == -0.417);
  CHECK(cfg.pass.speeding_policy == SpeedingPolicy::kClamp);
  CHECK(cfg.baseline.ref_gap == 40.0);
  CHECK(cfg.snapshot.vehicle_length == 5.0);
  CHECK(cfg.simulate.events == 3);
  CHECK(cfg.simulate.seed == 42);
  CHECK(cfg.grid.step == 0.05);
  CHECK(cfg.out_dir == "somewhere");
  CHECK(cfg.strict);

  {
    std::ofstream out(dir / "invalid.json");
    out << R"({"pass": {"k1": 0.5}})";
  }
  CHECK_THROWS_AS(load_config(dir / "invalid.json"), ConfigError);
  {
    std::ofstream out(dir / "notjson.json");
    out << "{{{{";
  }
  CHECK_THROWS_AS(load_config(dir / "notjson.json"), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);
}

TEST_CASE("dataset manifest round trip") {
  const auto dir = temp_dir("manifest");
  const auto specs = desk_scenarios(2);
  const auto policies = desk_policies(3);
  const auto cohort = generate_cohort(specs, policies, 9);
  const auto manifest = write_dataset(dir, cohort);
  const auto loaded = read_manifest(dir / "manifest.json");
  REQUIRE(loaded.events.size() == manifest.events.size());
  for (std::size_t e = 0; e < loaded.events.size(); ++e) {
    const auto& a = manifest.events[e];
    const auto& b = loaded.events[e];
    CHECK(a.event_id == b.event_id);
    CHECK(a.seed == b.seed);
    CHECK(a.window.start_s == b.window.start_s);
    CHECK(a.window.end_s == b.window.end_s);
    CHECK(a.route.speed_limit == b.route.speed_limit);
    REQUIRE(a.route.lanes.size() == b.route.lanes.size());
    REQUIRE(a.runs.size() == b.runs.size());
    for (std::size_t r = 0; r < a.runs.size(); ++r) {
      CHECK(a.runs[r].run_id == b.runs[r].run_id);
      CHECK(a.runs[r].file == b.runs[r].file);
      CHECK(a.runs[r].diagnostics.completed == b.runs[r].diagnostics.completed);
    }
    // The trajectory files exist, parse, and reproduce the in-memory tracks
    // within the nine-significant-digit serialization contract.
    for (std::size_t r = 0; r < b.runs.size(); ++r) {
      const auto tracks = read_tracks_csv(dir / b.runs[r].file);
      const auto& original = cohort.events[e].runs[r].result.tracks;
      REQUIRE(tracks.size() == original.size());
      for (std::size_t v = 0; v < tracks.size(); ++v) {
        REQUIRE(tracks[v].records.size() == original[v].records.size());
        for (std::size_t i = 0; i < tracks[v].records.size(); i += 17) {
          CHECK(tracks[v].records[i].s ==
                doctest::Approx(original[v].records[i].s).epsilon(1e-8));
          CHECK(tracks[v].records[i].speed ==
                doctest::Approx(original[v].records[i].speed).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("evaluate handles datasets with global coordinates via the config route") {
  const auto dir = temp_dir("xy_pipeline");
  const auto cohort = generate_cohort(desk_scenarios(1), desk_policies(2), 3);
  write_dataset(dir / "data", cohort);

  RunConfig config;
  config.dataset_dir = dir / "data";
  config.out_dir = dir / "out_s";
  const auto reference = cmd_evaluate(config, false);

  // Rewrite every trajectory file in (x, y) form on a straight route, with a
  // small lateral lane offset the projection must absorb.
  const auto manifest = read_manifest(dir / "data" / "manifest.json");
  for (const auto& event : manifest.events) {
    for (const auto& run : event.runs) {
      const auto tracks = read_tracks_csv(dir / "data" / run.file);
      std::ofstream out(dir / "data" / run.file);
      out << "vehicle_id,time,lane_id,x,y,speed,accel\n";
      for (const auto& track : tracks) {
        for (const auto& rec : track.records) {
          out << track.vehicle_id << ',' << format_double(rec.time) << ',' << rec.lane_id << ','
              << format_double(rec.s) << ',' << format_double(3.5 * rec.lane_id) << ','
              << format_double(rec.speed) << ',' << format_double(rec.accel) << '\n';
        }
      }
    }
  }

  // Without a route the dataset is rejected; with one it reproduces the
  // s-form evaluation.
  CHECK_THROWS_AS(cmd_evaluate(config, false), SchemaError);
  config.route.emplace(std::vector<RoutePoint>{{0.0, 0.0}, {2000.0, 0.0}});
  config.out_dir = dir / "out_xy";
  const auto projected = cmd_evaluate(config, false);
  REQUIRE(projected.runs.size() == reference.runs.size());
  for (std::size_t i = 0; i < reference.runs.size(); ++i) {
    CHECK(projected.runs[i].pass_aggregate ==
          doctest::Approx(reference.runs[i].pass_aggregate).epsilon(1e-9));
    CHECK(projected.runs[i].travel_time ==
          doctest::Approx(reference.runs[i].travel_time).epsilon(1e-9));
  }
}

TEST_CASE("metric csv lengths must agree") {
  PassSeries series;
  series.time = {0.0};
  series.v_proj = {1.0};
  series.available = {1.0};
  series.delta = {0.0};
  series.delta_scaled = {0.0};
  series.pass = {1.0};
  series.chosen_lane = {0};
  std::vector<SceneSnapshot> snaps(2);
  CHECK_THROWS_AS(write_metrics_csv(std::filesystem::temp_directory_path() / "m.csv", "x",
                                    snaps, series, std::vector<double>{0.0}),
                  InputError);
}
