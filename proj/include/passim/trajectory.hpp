#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace passim {

// One sampled vehicle state. `s` is the longitudinal position along the route
// (arc length); global (x, y) inputs are projected once at ingestion.
struct TrajectoryRecord {
  double time = 0.0;   // s, strictly increasing within a track
  int lane_id = 0;
  double s = 0.0;      // m
  double speed = 0.0;  // m/s, >= 0
  double accel = 0.0;  // m/s^2
};

struct VehicleTrack {
  std::string vehicle_id;
  std::vector<TrajectoryRecord> records;

  bool empty() const { return records.empty(); }
  double start_time() const { return records.front().time; }
  double end_time() const { return records.back().time; }
};

// Per-lane traffic context seen from the ego vehicle at one instant. Absent
// leader/obstacle means the lane is unconstrained within sensing range.
struct LaneContext {
  int lane_id = 0;
  std::optional<double> leader_speed;  // m/s
  std::optional<double> leader_gap;    // m, bumper to bumper
  std::optional<double> obstacle_gap;  // m, bumper to bumper

  bool free_lane() const { return !leader_gap && !obstacle_gap; }
};

// Ego state plus candidate-lane contexts at one instant; the unit of input
// for all metric evaluation. Candidate lanes are the ego lane plus reachable
// adjacent lanes, capped at three.
struct SceneSnapshot {
  double time = 0.0;
  double ego_speed = 0.0;
  int ego_lane = 0;
  std::vector<LaneContext> candidate_lanes;
  double speed_limit = 0.0;

  const LaneContext* find_lane(int lane_id) const {
    for (const auto& lane : candidate_lanes) {
      if (lane.lane_id == lane_id) return &lane;
    }
    return nullptr;
  }
};

// Spatial window a travel is measured over.
struct EventWindow {
  std::string event_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<std::string> vehicle_ids;
};

struct BlockedRange {
  double from_s = 0.0;
  double to_s = 0.0;
};

struct LaneSpec {
  int id = 0;
  std::vector<int> adjacent;
  std::vector<BlockedRange> blocked;  // ranges where the lane may not be used
};

struct Obstacle {
  int lane_id = 0;
  double s = 0.0;
};

struct RouteMeta {
  double speed_limit = 0.0;
  std::vector<LaneSpec> lanes;
  std::vector<Obstacle> obstacles;

  const LaneSpec* find_lane(int id) const {
    for (const auto& lane : lanes) {
      if (lane.id == id) return &lane;
    }
    return nullptr;
  }
};

struct SnapshotOptions {
  double vehicle_length = 4.5;  // m, uniform bumper-to-bumper correction
  double sensing_range = 300.0; // m, beyond this a lane is treated as free
};

// Builds one snapshot per ego tick. Leaders are the nearest same-lane
// vehicles strictly ahead of the ego; gaps are bumper-to-bumper. All tracks
// must share the ego sampling grid (resample first if they do not).
std::vector<SceneSnapshot> build_snapshots(const VehicleTrack& ego,
                                           std::span<const VehicleTrack> others,
                                           const RouteMeta& route,
                                           const SnapshotOptions& options = {});

// Linearly interpolates a track onto the given time grid. Samples outside the
// source span are dropped (the vehicle is absent there).
VehicleTrack resample_to_grid(const VehicleTrack& track, std::span<const double> times);

// Crossing duration over the window, with linear interpolation of the
// crossing instants. Throws IncompleteTravelError when the track does not
// cross both boundaries.
double travel_time(const VehicleTrack& track, const EventWindow& window);

// Validates the per-track invariants (monotone time, non-negative speed).
void validate_track(const VehicleTrack& track);

}  // namespace passim
