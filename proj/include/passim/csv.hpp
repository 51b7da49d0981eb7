#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "passim/baseline.hpp"
#include "passim/geometry.hpp"
#include "passim/pass_engine.hpp"
#include "passim/trajectory.hpp"

namespace passim {

// Floats are serialized with nine significant digits; this is the documented
// round-trip precision of every CSV the tool writes.
std::string format_double(double value);

// Trajectory CSV. The header is either
//   vehicle_id,time,lane_id,s,speed,accel
// or, for pre-projection data,
//   vehicle_id,time,lane_id,x,y,speed,accel
// in which case a route polyline is required to recover arc length.
void write_tracks_csv(const std::filesystem::path& path, std::span<const VehicleTrack> tracks);
std::vector<VehicleTrack> read_tracks_csv(const std::filesystem::path& path,
                                          const RoutePolyline* route = nullptr);

// Per-tick metric CSV:
//   vehicle_id,time,lane_id,v0,v_proj,chosen_lane,A,dA,dA_scaled,pass,baseline
void write_metrics_csv(const std::filesystem::path& path, const std::string& vehicle_id,
                       std::span<const SceneSnapshot> snapshots, const PassSeries& series,
                       std::span<const double> baseline);

}  // namespace passim
