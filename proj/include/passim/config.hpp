#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "passim/baseline.hpp"
#include "passim/calibration.hpp"
#include "passim/geometry.hpp"
#include "passim/pass_engine.hpp"
#include "passim/trajectory.hpp"

namespace passim {

struct SimulateConfig {
  std::string preset = "paper-desk";
  int events = 10;
  int runs = 43;
  std::uint64_t seed = 20260808;
};

// One structured config file drives every command; CLI flags override single
// fields afterward.
struct RunConfig {
  PassConfig pass;
  BaselineConfig baseline;
  SnapshotOptions snapshot;
  SimulateConfig simulate;
  GridSpec grid;
  std::filesystem::path out_dir = "out";
  std::filesystem::path dataset_dir;  // input dataset for evaluate/calibrate/compare
  bool strict = false;
  std::optional<RoutePolyline> route;  // for ingesting (x, y) trajectory files

  void validate() const;
};

RunConfig load_config(const std::filesystem::path& path);

}  // namespace passim
