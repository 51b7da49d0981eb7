#include "passim/pass_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "passim/errors.hpp"

namespace passim {

void PassConfig::validate() const {
  if (!(accel > 0.0)) throw ConfigError("accel (a1) must be positive");
  if (!(decel < 0.0)) throw ConfigError("decel (a2) must be negative");
  if (!(k1 < 0.0)) throw ConfigError("k1 must be negative");
  if (!(k2 > 0.0)) throw ConfigError("k2 must be positive");
  if (!(free_lane_horizon > 0.0)) throw ConfigError("free_lane_horizon must be positive");
  if (!(gap_epsilon >= 0.0) || !(speed_epsilon >= 0.0)) {
    throw ConfigError("epsilons must be non-negative");
  }
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
}

namespace detail {

double two_phase_v_proj(double v0, double v_lead, double gap, double a1, double a2) {
  const double dv = v_lead - v0;
  const double peak_rel = std::sqrt(a2 / (a2 - a1) * (2.0 * a1 * gap + dv * dv));
  return a1 * a2 * gap / (a2 * dv + (a2 - a1) * peak_rel) + v_lead;
}

double limit_capped_v_proj(double v0, double v_lead, double gap, double a1, double a2,
                           double v_limit) {
  const double num = 2.0 * a1 * a2 * gap * (v_limit - v_lead);
  const double den = 2.0 * a1 * a2 * gap + a2 * (v_limit - v0) * (v_limit - v0) -
                     a1 * (v_limit - v_lead) * (v_limit - v_lead);
  return num / den + v_lead;
}

double boundary_gap(double v0, double v_lead, double a1, double a2, double v_limit) {
  // Solve peak_rel == v_limit - v_lead for the gap.
  const double u_limit = v_limit - v_lead;
  const double dv = v_lead - v0;
  return (u_limit * u_limit * (a2 - a1) / a2 - dv * dv) / (2.0 * a1);
}

}  // namespace detail

ManeuverResult free_lane_maneuver(double v0, const PassConfig& cfg, double v_limit) {
  cfg.validate();
  ManeuverResult result;
  result.phase = PhaseTag::kFreeLane;
  result.post_speed = v_limit;
  if (v0 > v_limit) {
    result.speeding = true;
    if (cfg.speeding_policy == SpeedingPolicy::kClamp) v0 = v_limit;
  }
  const double t_accel = std::max(v_limit - v0, 0.0) / cfg.accel;
  result.duration = t_accel;
  result.distance = v0 * t_accel + 0.5 * cfg.accel * t_accel * t_accel;
  const double horizon = std::max(t_accel, cfg.free_lane_horizon);
  result.v_proj = (result.distance + v_limit * (horizon - t_accel)) / horizon;
  return result;
}

ManeuverResult catch_up_maneuver(double v0, double v_lead, double gap,
                                 const PassConfig& cfg, double v_limit) {
  cfg.validate();
  if (gap < 0.0) throw InputError("catch-up maneuver gap must be non-negative");
  if (v_lead < 0.0 || v0 < 0.0) throw InputError("speeds must be non-negative");

  ManeuverResult result;
  result.post_speed = v_lead;
  if (v0 > v_limit) {
    result.speeding = true;
    if (cfg.speeding_policy == SpeedingPolicy::kClamp) v0 = std::min(v0, v_limit);
  }

  const double closing = v0 - v_lead;

  // Already matched to the constraint within tolerance.
  if (gap <= cfg.gap_epsilon && std::abs(closing) <= cfg.speed_epsilon) {
    result.phase = PhaseTag::kDegenerate;
    result.v_proj = v_lead;
    return result;
  }

  // The required stopping distance consumes the whole gap: the acceleration
  // phase is omitted and the deceleration rate is adjusted to end exactly at
  // the leader's bumper with matched speed.
  if (closing > 0.0 && closing * closing / (2.0 * -cfg.decel) >= gap) {
    result.phase = PhaseTag::kDecelOnly;
    result.duration = (closing > 0.0 && gap > 0.0) ? 2.0 * gap / closing : 0.0;
    result.distance = gap + v_lead * result.duration;
    result.v_proj = (v0 + v_lead) / 2.0;
    return result;
  }

  // A leader at or beyond the speed limit cannot be caught by a limit-bound
  // ego; the lane imposes no constraint below the limit itself.
  if (v_lead >= v_limit - cfg.speed_epsilon) {
    ManeuverResult free = free_lane_maneuver(v0, cfg, v_limit);
    free.speeding = free.speeding || result.speeding;
    return free;
  }

  const double a1 = cfg.accel;
  const double a2 = cfg.decel;
  const double dv = v_lead - v0;
  const double peak_rel = std::sqrt(a2 / (a2 - a1) * (2.0 * a1 * gap + dv * dv));

  if (v_lead + peak_rel <= v_limit) {
    result.phase = PhaseTag::kTwoPhase;
    result.duration = ((a2 - a1) * peak_rel - a2 * (v0 - v_lead)) / (a1 * a2);
  } else {
    result.phase = PhaseTag::kLimitCapped;
    const double u_limit = v_limit - v_lead;
    // Time over the relative-motion profile: accelerate to the limit, cruise,
    // decelerate onto the leader.
    result.duration =
        (gap + (u_limit - (v0 - v_lead)) * (u_limit - (v0 - v_lead)) / (2.0 * a1) -
         u_limit * u_limit / (2.0 * a2)) /
        u_limit;
  }
  result.distance = gap + v_lead * result.duration;
  result.v_proj = (result.duration > 0.0) ? v_lead + gap / result.duration : v_lead;
  return result;
}

ManeuverResult lane_maneuver(const LaneContext& lane, double v0,
                             const PassConfig& cfg, double v_limit) {
  const bool has_leader = lane.leader_gap.has_value();
  const bool has_obstacle = lane.obstacle_gap.has_value();
  if (!has_leader && !has_obstacle) {
    return free_lane_maneuver(v0, cfg, v_limit);
  }
  ManeuverResult leader_result;
  ManeuverResult obstacle_result;
  if (has_leader) {
    leader_result = catch_up_maneuver(v0, lane.leader_speed.value_or(0.0),
                                      *lane.leader_gap, cfg, v_limit);
  }
  if (has_obstacle) {
    obstacle_result = catch_up_maneuver(v0, 0.0, *lane.obstacle_gap, cfg, v_limit);
  }
  if (!has_obstacle) return leader_result;
  if (!has_leader) return obstacle_result;
  return (obstacle_result.v_proj <= leader_result.v_proj) ? obstacle_result : leader_result;
}

MultiLaneProjection project_attainable_speed(const SceneSnapshot& snapshot,
                                             const PassConfig& cfg) {
  if (snapshot.candidate_lanes.empty()) {
    throw InputError("snapshot has no candidate lanes");
  }
  if (snapshot.candidate_lanes.size() > 3) {
    throw InputError("snapshot has more than three candidate lanes");
  }

  struct LaneEval {
    int lane_id;
    ManeuverResult maneuver;
    double horizon_avg = 0.0;  // average over the common horizon
    double best = 0.0;         // value the lane competes with
  };
  std::vector<LaneEval> lanes;
  lanes.reserve(snapshot.candidate_lanes.size());

  MultiLaneProjection out;
  double t_max = 0.0;
  for (const auto& ctx : snapshot.candidate_lanes) {
    LaneEval eval;
    eval.lane_id = ctx.lane_id;
    eval.maneuver = lane_maneuver(ctx, snapshot.ego_speed, cfg, snapshot.speed_limit);
    out.speeding = out.speeding || eval.maneuver.speeding;
    t_max = std::max(t_max, eval.maneuver.duration);
    lanes.push_back(std::move(eval));
  }

  if (lanes.size() == 1) {
    // A single candidate reduces exactly to the standalone lane result.
    out.v_proj = lanes[0].maneuver.v_proj;
    out.chosen_lane = lanes[0].lane_id;
    out.per_lane.push_back({lanes[0].lane_id, lanes[0].maneuver.v_proj});
    return out;
  }

  for (auto& lane : lanes) {
    const auto& m = lane.maneuver;
    if (t_max > 0.0) {
      lane.horizon_avg = (m.distance + m.post_speed * (t_max - m.duration)) / t_max;
    } else {
      // All maneuvers are instantaneous; the attainable speed degenerates to
      // the sustained post-maneuver speed.
      lane.horizon_avg = m.post_speed;
    }
    // A lane is never worth less than what its own maneuver attains; without
    // this floor a long low-value maneuver in one lane could drag the common
    // horizon out and shrink the result below a previously attainable value.
    lane.best = std::max(lane.horizon_avg, m.v_proj);
    out.per_lane.push_back({lane.lane_id, lane.horizon_avg});
  }

  const LaneEval* winner = nullptr;
  for (const auto& lane : lanes) {
    if (winner == nullptr || lane.best > winner->best) {
      winner = &lane;
      continue;
    }
    if (lane.best == winner->best) {
      const bool lane_is_ego = lane.lane_id == snapshot.ego_lane;
      const bool winner_is_ego = winner->lane_id == snapshot.ego_lane;
      if ((lane_is_ego && !winner_is_ego) ||
          (lane_is_ego == winner_is_ego && lane.lane_id < winner->lane_id)) {
        winner = &lane;
      }
    }
  }
  out.v_proj = winner->best;
  out.chosen_lane = winner->lane_id;
  return out;
}

double utilization(double a_t, double a_prev, const PassConfig& cfg) {
  const double delta = a_t - a_prev;
  return (a_t <= 0.0 ? cfg.k1 : cfg.k2) * delta;
}

double pass_instant(double a_t, double da_scaled) {
  return a_t * (std::tanh(da_scaled) + 1.0);
}

PassSeries evaluate_series(std::span<const SceneSnapshot> snapshots, const PassConfig& cfg) {
  cfg.validate();
  if (snapshots.empty()) throw InputError("cannot evaluate an empty snapshot sequence");

  PassSeries series;
  const std::size_t n = snapshots.size();
  series.time.reserve(n);
  series.v_proj.reserve(n);
  series.available.reserve(n);
  series.delta.reserve(n);
  series.delta_scaled.reserve(n);
  series.pass.reserve(n);
  series.chosen_lane.reserve(n);

  double sum = 0.0;
  double a_prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && snapshots[i].time <= snapshots[i - 1].time) {
      throw InputError("snapshots must be strictly time-ordered");
    }
    const MultiLaneProjection proj = project_attainable_speed(snapshots[i], cfg);
    const double a_t = available_space(proj.v_proj, snapshots[i].ego_speed);
    const double delta = (i == 0) ? 0.0 : a_t - a_prev;
    const double da_scaled = (i == 0) ? 0.0 : utilization(a_t, a_prev, cfg);
    const double value = pass_instant(a_t, da_scaled);

    series.time.push_back(snapshots[i].time);
    series.v_proj.push_back(proj.v_proj);
    series.available.push_back(a_t);
    series.delta.push_back(delta);
    series.delta_scaled.push_back(da_scaled);
    series.pass.push_back(value);
    series.chosen_lane.push_back(proj.chosen_lane);
    if (proj.speeding) ++series.speeding_ticks;

    sum += value;
    a_prev = a_t;
  }
  series.mean_pass = sum / static_cast<double>(n);
  return series;
}

}  // namespace passim
