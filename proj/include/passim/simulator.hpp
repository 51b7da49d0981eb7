#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "passim/trajectory.hpp"

namespace passim {

struct IdmParams {
  double desired_speed = 15.0;   // m/s
  double min_gap = 2.0;          // m, s0
  double time_headway = 1.5;     // s, drawn per vehicle in [1.0, 2.0]
  double max_accel = 1.5;        // m/s^2
  double comfort_decel = 2.0;    // m/s^2, positive magnitude
  double accel_exponent = 4.0;
  double hard_decel_floor = -8.0;  // m/s^2
};

// Car-following acceleration. `closing_speed` is own speed minus leader
// speed. Throws CollisionError when the gap is not positive.
double idm_accel(double v, double gap, double closing_speed, const IdmParams& p);

struct LeadProfile {
  double base_speed = 8.3;  // m/s
  double amplitude = 1.5;   // m/s
  double period = 40.0;     // s

  void validate() const;  // requires base - amplitude > 0
};

// Sinusoidally modulated lead-vehicle speed at time t.
double lead_speed(double t, const LeadProfile& profile);

struct MergeResistance {
  double probability = 0.5;      // chance a follower resists a merge attempt
  double reduced_headway = 0.6;  // s, applied while resisting
  double detection_range = 60.0; // m, longitudinal distance for detection
  double yield_headway = 2.8;    // s, applied when the follower lets the ego in
};

enum class ScenarioKind { kIncident, kOffRamp, kOnRamp };

// Declarative description of one mandatory-lane-change event. The ego starts
// in `ego_lane`, which carries a hard constraint at `constraint_s` (a stalled
// vehicle, a ramp gate, or the end of an acceleration lane), and must merge
// into `target_lane`, which carries an IDM platoon behind a sinusoidal lead
// vehicle.
struct ScenarioSpec {
  std::string event_id;
  ScenarioKind kind = ScenarioKind::kIncident;
  double route_length = 900.0;
  double constraint_s = 650.0;
  bool physical_obstacle = true;  // false: a gate the ego must not pass
  int platoon_size = 10;          // followers behind the lead vehicle
  double platoon_start_s = 380.0; // lead vehicle position at t = 0
  LeadProfile lead;
  MergeResistance resistance;
  double window_start_s = 100.0;
  double window_end_s = 800.0;
  double speed_limit = 22.2;
  double ego_start_s = 0.0;
  double ego_start_speed = 14.0;
  int ego_lane = 1;
  int target_lane = 0;
  double commit_delay = 2.0;    // s between gap acceptance and the lane switch
  double max_duration = 300.0;  // s, after which the run counts as incomplete
  double vehicle_length = 4.5;  // m
  double dt = 0.05;             // s

  void validate() const;  // throws ConfigError on inconsistent geometry
};

enum class PolicyKind { kEarlyMerge, kLateMerge, kTargetGap, kHesitant };

struct EgoPolicy {
  PolicyKind kind = PolicyKind::kEarlyMerge;
  double desired_speed_factor = 0.9;  // times the speed limit
  double commit_distance = 1e9;       // m before the constraint to start seeking
  double gap_acceptance = 1.0;        // scale on the required lead/lag gaps
  int target_gap_index = 1;           // preferred slot, counted from the platoon front
  double ego_time_headway = 1.2;      // s, the ego's own car-following headway
  std::string label;
};

struct RunDiagnostics {
  bool completed = false;            // ego merged and crossed the window end
  bool merged = false;
  double merge_commit_time = -1.0;   // s, gap accepted
  double merge_complete_time = -1.0; // s, lane switch done
  int resistance_triggers = 0;
  double end_time = 0.0;
};

struct RunResult {
  std::vector<VehicleTrack> tracks;  // ego first, then the platoon front to back
  RunDiagnostics diagnostics;
};

// Simulates one event. Deterministic in (spec, policy, seed): the platoon
// draws depend only on the seed, so runs sharing a seed see identical
// surrounding traffic up to ego-interaction effects.
RunResult run_event(const ScenarioSpec& spec, const EgoPolicy& policy, std::uint64_t seed);

// Route metadata consumed by snapshot building for this scenario.
RouteMeta scenario_route_meta(const ScenarioSpec& spec);
EventWindow scenario_window(const ScenarioSpec& spec);

struct SimulatedRun {
  std::string run_id;
  EgoPolicy policy;
  RunResult result;
};

struct SimulatedEvent {
  ScenarioSpec spec;
  std::uint64_t seed = 0;
  std::vector<SimulatedRun> runs;
};

struct CohortDataset {
  std::vector<SimulatedEvent> events;
};

// Runs every policy against every scenario; one seed per event shared by all
// of its runs. Throws ConfigError on duplicate event ids and InputError when
// fewer than two policies are supplied.
CohortDataset generate_cohort(std::span<const ScenarioSpec> specs,
                              std::span<const EgoPolicy> policies,
                              std::uint64_t base_seed);

// Shipped desk-scale presets: `count` events split across the three scenario
// kinds, and `count` ego policies sweeping the efficient-to-inefficient range.
std::vector<ScenarioSpec> desk_scenarios(int count = 10);
std::vector<EgoPolicy> desk_policies(int count = 43);

}  // namespace passim
