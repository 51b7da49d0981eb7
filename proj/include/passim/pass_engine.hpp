#pragma once

#include <span>
#include <vector>

#include "passim/trajectory.hpp"

namespace passim {

enum class SpeedingPolicy {
  kFlagOnly,  // evaluate the formulas as-is and set a warning flag
  kClamp,     // clamp the ego speed to the limit before evaluating
};

struct PassConfig {
  double accel = 1.5;   // a1 > 0, constant acceleration of the maneuver
  double decel = -1.5;  // a2 < 0, constant deceleration of the maneuver
  double k1 = -0.5;     // utilization scaling in the high-efficiency regime, < 0
  double k2 = 0.5;      // utilization scaling in the low-efficiency regime, > 0
  double free_lane_horizon = 30.0;  // s, averaging horizon for free lanes
  double gap_epsilon = 0.01;        // m
  double speed_epsilon = 0.01;      // m/s
  double dt = 0.05;                 // s, nominal tick spacing
  SpeedingPolicy speeding_policy = SpeedingPolicy::kFlagOnly;

  void validate() const;  // throws ConfigError
};

enum class PhaseTag {
  kTwoPhase,    // accelerate, then decelerate onto the leader
  kLimitCapped, // accelerate, cruise at the speed limit, decelerate
  kDecelOnly,   // immediate deceleration; acceleration phase omitted
  kFreeLane,    // accelerate to the speed limit and cruise
  kDegenerate,  // already matched to the constraint; nothing to do
};

// Outcome of one idealized maneuver in one lane.
struct ManeuverResult {
  double duration = 0.0;    // T, s
  double distance = 0.0;    // D, m travelled by the ego during the maneuver
  double v_proj = 0.0;      // m/s, average speed (over the horizon for free lanes)
  double post_speed = 0.0;  // m/s sustained once the maneuver has ended
  PhaseTag phase = PhaseTag::kDegenerate;
  bool speeding = false;    // ego speed exceeded the limit on entry
};

// Catch-up maneuver onto a leader moving at constant v_lead with initial
// bumper gap `gap`. Throws InputError for negative gaps.
ManeuverResult catch_up_maneuver(double v0, double v_lead, double gap,
                                 const PassConfig& cfg, double v_limit);

// Unconstrained lane: accelerate to the speed limit and cruise. v_proj is
// averaged over max(duration, free_lane_horizon).
ManeuverResult free_lane_maneuver(double v0, const PassConfig& cfg, double v_limit);

// Dispatches on the lane contents; with both a leader and a static obstacle
// present the more restrictive maneuver wins.
ManeuverResult lane_maneuver(const LaneContext& lane, double v0,
                             const PassConfig& cfg, double v_limit);

struct LaneProjection {
  int lane_id = 0;
  double v_proj = 0.0;  // average speed over the common horizon
};

struct MultiLaneProjection {
  double v_proj = 0.0;  // reference attainable speed for the snapshot
  int chosen_lane = 0;
  std::vector<LaneProjection> per_lane;
  bool speeding = false;
};

// Projected attainable speed across the candidate lanes of a snapshot: each
// lane's maneuver is extended at its post-maneuver speed to the longest
// maneuver duration, averages are compared over that common horizon, and the
// best lane wins. Ties prefer the ego lane, then the lowest lane id.
MultiLaneProjection project_attainable_speed(const SceneSnapshot& snapshot,
                                             const PassConfig& cfg);

// Available acceleration space: headroom between the reference attainable
// speed and the current ego speed.
inline double available_space(double v_proj, double v0) { return v_proj - v0; }

// Scaled temporal change of the available space. The regime is keyed on the
// current value: k1 applies when a_t <= 0, k2 when a_t > 0.
double utilization(double a_t, double a_prev, const PassConfig& cfg);

// Instantaneous metric: a_t * (tanh(da_scaled) + 1). Shares the sign of a_t;
// the bracket factor lies strictly inside (0, 2).
double pass_instant(double a_t, double da_scaled);

struct PassSeries {
  std::vector<double> time;
  std::vector<double> v_proj;
  std::vector<double> available;     // A_t
  std::vector<double> delta;         // A_t - A_{t-1}, zero on the first tick
  std::vector<double> delta_scaled;  // regime-scaled delta
  std::vector<double> pass;          // instantaneous metric
  std::vector<int> chosen_lane;
  double mean_pass = 0.0;            // time-aggregated metric
  int speeding_ticks = 0;

  std::size_t size() const { return pass.size(); }
};

// Full per-tick pipeline over a time-ordered snapshot sequence.
PassSeries evaluate_series(std::span<const SceneSnapshot> snapshots, const PassConfig& cfg);

namespace detail {

// Closed forms for the two catch-up cases, kept separate so the boundary
// between them can be checked directly.
double two_phase_v_proj(double v0, double v_lead, double gap, double a1, double a2);
double limit_capped_v_proj(double v0, double v_lead, double gap, double a1, double a2,
                           double v_limit);
// Gap at which the two-phase peak speed exactly reaches the speed limit.
double boundary_gap(double v0, double v_lead, double a1, double a2, double v_limit);

}  // namespace detail

}  // namespace passim
