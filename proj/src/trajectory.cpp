#include "passim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "passim/errors.hpp"

namespace passim {

namespace {

constexpr double kGridTolerance = 1e-6;  // s

// Index of the sample at `time`, or -1 when the track has no such sample.
int sample_index(const VehicleTrack& track, double time) {
  const auto& recs = track.records;
  auto it = std::lower_bound(recs.begin(), recs.end(), time - kGridTolerance,
                             [](const TrajectoryRecord& r, double t) { return r.time < t; });
  if (it == recs.end()) return -1;
  if (std::abs(it->time - time) > kGridTolerance) return -1;
  return static_cast<int>(it - recs.begin());
}

bool lane_blocked_at(const LaneSpec& lane, double s) {
  for (const auto& range : lane.blocked) {
    if (s >= range.from_s && s <= range.to_s) return true;
  }
  return false;
}

}  // namespace

void validate_track(const VehicleTrack& track) {
  if (track.records.empty()) {
    throw InputError("track '" + track.vehicle_id + "' is empty");
  }
  for (std::size_t i = 0; i < track.records.size(); ++i) {
    const auto& r = track.records[i];
    if (r.speed < 0.0) {
      throw InputError("track '" + track.vehicle_id + "': negative speed at t=" +
                       std::to_string(r.time));
    }
    if (i > 0 && r.time <= track.records[i - 1].time) {
      throw InputError("track '" + track.vehicle_id + "': time not strictly increasing at t=" +
                       std::to_string(r.time));
    }
  }
}

std::vector<SceneSnapshot> build_snapshots(const VehicleTrack& ego,
                                           std::span<const VehicleTrack> others,
                                           const RouteMeta& route,
                                           const SnapshotOptions& options) {
  validate_track(ego);
  if (route.speed_limit <= 0.0 || route.lanes.empty()) {
    throw ConfigError("route metadata requires a positive speed limit and lane definitions");
  }
  for (const auto& other : others) {
    validate_track(other);
    // Other tracks must be sampled on the ego grid wherever they overlap it.
    for (const auto& rec : ego.records) {
      if (rec.time < other.start_time() - kGridTolerance ||
          rec.time > other.end_time() + kGridTolerance) {
        continue;
      }
      if (sample_index(other, rec.time) < 0) {
        throw ResampleError("track '" + other.vehicle_id +
                            "' is not sampled on the ego time grid at t=" +
                            std::to_string(rec.time) + "; resample it first");
      }
    }
  }

  std::vector<SceneSnapshot> snapshots;
  snapshots.reserve(ego.records.size());
  for (const auto& ego_rec : ego.records) {
    SceneSnapshot snap;
    snap.time = ego_rec.time;
    snap.ego_speed = ego_rec.speed;
    snap.ego_lane = ego_rec.lane_id;
    snap.speed_limit = route.speed_limit;

    const LaneSpec* ego_lane = route.find_lane(ego_rec.lane_id);
    if (ego_lane == nullptr) {
      throw ConfigError("ego lane " + std::to_string(ego_rec.lane_id) +
                        " is not part of the route metadata");
    }

    std::vector<int> candidate_ids{ego_lane->id};
    for (int adj : ego_lane->adjacent) {
      if (static_cast<int>(candidate_ids.size()) >= 3) break;
      const LaneSpec* lane = route.find_lane(adj);
      if (lane == nullptr) continue;
      if (lane_blocked_at(*lane, ego_rec.s)) continue;
      candidate_ids.push_back(adj);
    }

    for (int lane_id : candidate_ids) {
      LaneContext ctx;
      ctx.lane_id = lane_id;

      double best_gap = std::numeric_limits<double>::infinity();
      double best_speed = 0.0;
      for (const auto& other : others) {
        const int idx = sample_index(other, ego_rec.time);
        if (idx < 0) continue;
        const auto& rec = other.records[idx];
        if (rec.lane_id != lane_id) continue;
        if (rec.s <= ego_rec.s) continue;  // followers are ignored
        const double gap = rec.s - ego_rec.s - options.vehicle_length;
        if (gap < best_gap) {
          best_gap = gap;
          best_speed = rec.speed;
        }
      }
      if (best_gap <= options.sensing_range && std::isfinite(best_gap)) {
        ctx.leader_gap = std::max(best_gap, 0.0);
        ctx.leader_speed = best_speed;
      }

      double best_obstacle = std::numeric_limits<double>::infinity();
      for (const auto& obstacle : route.obstacles) {
        if (obstacle.lane_id != lane_id) continue;
        if (obstacle.s <= ego_rec.s) continue;
        best_obstacle = std::min(best_obstacle, obstacle.s - ego_rec.s - options.vehicle_length);
      }
      if (best_obstacle <= options.sensing_range && std::isfinite(best_obstacle)) {
        ctx.obstacle_gap = std::max(best_obstacle, 0.0);
      }
      snap.candidate_lanes.push_back(std::move(ctx));
    }
    snapshots.push_back(std::move(snap));
  }
  return snapshots;
}

VehicleTrack resample_to_grid(const VehicleTrack& track, std::span<const double> times) {
  validate_track(track);
  VehicleTrack out;
  out.vehicle_id = track.vehicle_id;
  const auto& recs = track.records;
  for (double t : times) {
    if (t < recs.front().time - kGridTolerance || t > recs.back().time + kGridTolerance) {
      continue;
    }
    auto it = std::lower_bound(recs.begin(), recs.end(), t,
                               [](const TrajectoryRecord& r, double v) { return r.time < v; });
    TrajectoryRecord sample;
    if (it == recs.end()) {
      sample = recs.back();
      sample.time = t;
    } else if (it == recs.begin() || std::abs(it->time - t) <= kGridTolerance) {
      sample = *it;
      sample.time = t;
    } else {
      const auto& hi = *it;
      const auto& lo = *std::prev(it);
      const double w = (t - lo.time) / (hi.time - lo.time);
      sample.time = t;
      sample.s = lo.s + w * (hi.s - lo.s);
      sample.speed = lo.speed + w * (hi.speed - lo.speed);
      sample.accel = lo.accel + w * (hi.accel - lo.accel);
      sample.lane_id = (w < 0.5) ? lo.lane_id : hi.lane_id;
    }
    out.records.push_back(sample);
  }
  if (out.records.empty()) {
    throw ResampleError("track '" + track.vehicle_id + "' does not overlap the target grid");
  }
  return out;
}

namespace {

// First time the track reaches position `target`, linearly interpolated.
double crossing_time(const VehicleTrack& track, double target) {
  const auto& recs = track.records;
  if (recs.front().s >= target) {
    if (recs.front().s == target) return recs.front().time;
    throw IncompleteTravelError("track '" + track.vehicle_id + "' starts past s=" +
                                std::to_string(target));
  }
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (recs[i].s >= target) {
      const double ds = recs[i].s - recs[i - 1].s;
      const double w = (ds > 0.0) ? (target - recs[i - 1].s) / ds : 1.0;
      return recs[i - 1].time + w * (recs[i].time - recs[i - 1].time);
    }
  }
  throw IncompleteTravelError("track '" + track.vehicle_id + "' never reaches s=" +
                              std::to_string(target));
}

}  // namespace

double travel_time(const VehicleTrack& track, const EventWindow& window) {
  validate_track(track);
  if (window.end_s <= window.start_s) {
    throw InputError("event window end must lie past its start");
  }
  const double t_start = crossing_time(track, window.start_s);
  const double t_end = crossing_time(track, window.end_s);
  return t_end - t_start;
}

}  // namespace passim
