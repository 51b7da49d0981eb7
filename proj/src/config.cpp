#include "passim/config.hpp"

#include <fstream>

#include "json.hpp"
#include "passim/errors.hpp"

namespace passim {

void RunConfig::validate() const {
  pass.validate();
  baseline.validate();
  grid.validate();
  if (!(snapshot.vehicle_length >= 0.0)) throw ConfigError("vehicle length must be non-negative");
  if (!(snapshot.sensing_range > 0.0)) throw ConfigError("sensing range must be positive");
  if (simulate.events < 1) throw ConfigError("simulate.events must be at least 1");
  if (simulate.runs < 2) throw ConfigError("simulate.runs must be at least 2");
}

namespace {

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }

  RunConfig cfg;
  try {
    if (j.contains("pass")) {
      const auto& p = j.at("pass");
      read_field(p, "a1", cfg.pass.accel);
      read_field(p, "a2", cfg.pass.decel);
      read_field(p, "k1", cfg.pass.k1);
      read_field(p, "k2", cfg.pass.k2);
      read_field(p, "free_lane_horizon_s", cfg.pass.free_lane_horizon);
      read_field(p, "gap_epsilon_m", cfg.pass.gap_epsilon);
      read_field(p, "speed_epsilon_mps", cfg.pass.speed_epsilon);
      read_field(p, "dt_s", cfg.pass.dt);
      if (p.contains("speeding_policy")) {
        const std::string policy = p.at("speeding_policy").get<std::string>();
        if (policy == "flag") {
          cfg.pass.speeding_policy = SpeedingPolicy::kFlagOnly;
        } else if (policy == "clamp") {
          cfg.pass.speeding_policy = SpeedingPolicy::kClamp;
        } else {
          throw ConfigError("speeding_policy must be 'flag' or 'clamp'");
        }
      }
    }
    if (j.contains("baseline")) {
      read_field(j.at("baseline"), "d_ref_m", cfg.baseline.ref_gap);
    }
    if (j.contains("snapshot")) {
      const auto& s = j.at("snapshot");
      read_field(s, "vehicle_length_m", cfg.snapshot.vehicle_length);
      read_field(s, "sensing_range_m", cfg.snapshot.sensing_range);
    }
    if (j.contains("simulate")) {
      const auto& s = j.at("simulate");
      read_field(s, "preset", cfg.simulate.preset);
      read_field(s, "events", cfg.simulate.events);
      read_field(s, "runs", cfg.simulate.runs);
      read_field(s, "seed", cfg.simulate.seed);
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      read_field(g, "k1_min", cfg.grid.k1_min);
      read_field(g, "k1_max", cfg.grid.k1_max);
      read_field(g, "k2_min", cfg.grid.k2_min);
      read_field(g, "k2_max", cfg.grid.k2_max);
      read_field(g, "step", cfg.grid.step);
    }
    std::string out_dir;
    read_field(j, "out_dir", out_dir);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    std::string dataset_dir;
    read_field(j, "dataset_dir", dataset_dir);
    if (!dataset_dir.empty()) cfg.dataset_dir = dataset_dir;
    read_field(j, "strict", cfg.strict);
    if (j.contains("route") && j.at("route").contains("polyline")) {
      std::vector<RoutePoint> points;
      for (const auto& pt : j.at("route").at("polyline")) {
        points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
      }
      cfg.route.emplace(std::move(points));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path.string() + "': " + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace passim
