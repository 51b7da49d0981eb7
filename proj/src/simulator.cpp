#include "passim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "passim/errors.hpp"
#include "passim/rng.hpp"

namespace passim {

double idm_accel(double v, double gap, double closing_speed, const IdmParams& p) {
  if (gap <= 0.0) {
    throw CollisionError("gap closed to " + std::to_string(gap) + " m");
  }
  const double interaction = p.min_gap + v * p.time_headway +
                             v * closing_speed / (2.0 * std::sqrt(p.max_accel * p.comfort_decel));
  const double desired_gap = std::max(interaction, 0.0);
  const double a = p.max_accel * (1.0 - std::pow(v / p.desired_speed, p.accel_exponent) -
                                  (desired_gap / gap) * (desired_gap / gap));
  return std::max(a, p.hard_decel_floor);
}

void LeadProfile::validate() const {
  if (!(base_speed - amplitude > 0.0)) {
    throw ConfigError("lead profile base speed must exceed its amplitude");
  }
  if (!(period > 0.0)) throw ConfigError("lead profile period must be positive");
}

double lead_speed(double t, const LeadProfile& profile) {
  return profile.base_speed +
         profile.amplitude * std::sin(2.0 * std::numbers::pi * t / profile.period);
}

void ScenarioSpec::validate() const {
  lead.validate();
  if (!(route_length > 0.0)) throw ConfigError("route length must be positive");
  if (!(constraint_s > ego_start_s && constraint_s < route_length)) {
    throw ConfigError("constraint must lie inside the route ahead of the ego");
  }
  if (!(window_start_s < window_end_s && window_end_s <= route_length)) {
    throw ConfigError("event window must lie inside the route");
  }
  if (platoon_size < 0) throw ConfigError("platoon size must be non-negative");
  if (!(speed_limit > 0.0)) throw ConfigError("speed limit must be positive");
  if (!(dt > 0.0) || !(commit_delay >= 0.0) || !(max_duration > 0.0)) {
    throw ConfigError("timing parameters must be positive");
  }
  if (!(resistance.probability >= 0.0 && resistance.probability <= 1.0)) {
    throw ConfigError("resistance probability must lie in [0, 1]");
  }
  if (!(resistance.reduced_headway > 0.0)) {
    throw ConfigError("resistance reduced headway must be positive");
  }
}

RouteMeta scenario_route_meta(const ScenarioSpec& spec) {
  RouteMeta meta;
  meta.speed_limit = spec.speed_limit;
  LaneSpec target{spec.target_lane, {spec.ego_lane}, {}};
  LaneSpec start{spec.ego_lane, {spec.target_lane}, {}};
  // The start lane is unusable from the constraint onward: a closed incident
  // site, a passed ramp, or the end of the acceleration lane.
  start.blocked.push_back({spec.constraint_s, std::numeric_limits<double>::max()});
  meta.lanes.push_back(target);
  meta.lanes.push_back(start);
  // A gate is a stop line rather than a vehicle body; shift it by one vehicle
  // length so the bumper-to-bumper gap equals the true stopping distance.
  const double obstacle_s =
      spec.physical_obstacle ? spec.constraint_s : spec.constraint_s + spec.vehicle_length;
  meta.obstacles.push_back({spec.ego_lane, obstacle_s});
  return meta;
}

EventWindow scenario_window(const ScenarioSpec& spec) {
  EventWindow window;
  window.event_id = spec.event_id;
  window.start_s = spec.window_start_s;
  window.end_s = spec.window_end_s;
  return window;
}

namespace {

struct SimVehicle {
  std::string id;
  int lane = 0;
  double s = 0.0;
  double v = 0.0;
  double a = 0.0;
  IdmParams idm;
  double normal_headway = 1.5;
};

enum class EgoPhase { kFollow, kSeek, kCommit, kDone };

// Index pair identifying a merge slot: ahead of `rear` and behind `front`
// (indices into the platoon vector, -1 for an open end).
struct GapTarget {
  int front = -1;
  int rear = -1;
  bool operator==(const GapTarget&) const = default;
};

class EventSimulator {
 public:
  EventSimulator(const ScenarioSpec& spec, const EgoPolicy& policy, std::uint64_t seed)
      : spec_(spec), policy_(policy), platoon_rng_(derive_seed(seed, 0)),
        resist_rng_(derive_seed(seed, 1)) {
    spec_.validate();
    spawn();
  }

  RunResult run() {
    RunResult result;
    const int max_ticks = static_cast<int>(spec_.max_duration / spec_.dt);
    double crossed_end_at = -1.0;
    for (int tick = 0; tick <= max_ticks; ++tick) {
      const double t = tick * spec_.dt;
      update_policy(t);
      compute_accels(t);
      record(t);
      integrate(t);
      check_collisions();
      if (crossed_end_at < 0.0 && ego_.s >= spec_.window_end_s) {
        crossed_end_at = t;
      }
      if (crossed_end_at >= 0.0 && t - crossed_end_at >= 1.0) break;
    }
    diag_.completed = diag_.merged && crossed_end_at >= 0.0;
    diag_.end_time = tracks_.front().records.back().time;
    result.diagnostics = diag_;
    result.tracks = std::move(tracks_);
    return result;
  }

 private:
  void spawn() {
    ego_.id = "ego";
    ego_.lane = spec_.ego_lane;
    ego_.s = spec_.ego_start_s;
    ego_.v = spec_.ego_start_speed;
    ego_.idm.desired_speed = std::max(policy_.desired_speed_factor * spec_.speed_limit, 1.0);
    ego_.idm.time_headway = policy_.ego_time_headway;
    ego_.idm.comfort_decel = 2.5;

    double s = spec_.platoon_start_s;
    double v = lead_speed(0.0, spec_.lead);
    for (int i = 0; i < spec_.platoon_size; ++i) {
      SimVehicle veh;
      veh.id = (i == 0) ? "lead" : "p" + std::to_string(i);
      veh.lane = spec_.target_lane;
      if (i > 0) {
        // Spawn gap keeps the instantaneous time headway inside [1.0, 2.0] s.
        const double headway = platoon_rng_.uniform(1.0, 2.0);
        s = s - spec_.vehicle_length - headway * v;
      }
      veh.s = s;
      veh.v = v;
      veh.idm.desired_speed = spec_.lead.base_speed + spec_.lead.amplitude + 2.0;
      veh.idm.time_headway = platoon_rng_.uniform(1.0, 2.0);
      veh.normal_headway = veh.idm.time_headway;
      platoon_.push_back(veh);
    }

    tracks_.resize(platoon_.size() + 1);
    tracks_[0].vehicle_id = ego_.id;
    for (std::size_t i = 0; i < platoon_.size(); ++i) {
      tracks_[i + 1].vehicle_id = platoon_[i].id;
    }
  }

  double gate_gap() const {
    const double offset = spec_.physical_obstacle ? spec_.vehicle_length : 0.0;
    return spec_.constraint_s - offset - ego_.s;
  }

  // Nearest platoon vehicle ahead of `s` in the target lane, or -1.
  int platoon_leader_of(double s) const {
    int best = -1;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < platoon_.size(); ++i) {
      const double gap = platoon_[i].s - s;
      if (gap > 0.0 && gap < best_gap) {
        best_gap = gap;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  GapTarget nearest_gap() const {
    GapTarget best;
    double best_cost = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(platoon_.size());
    for (int g = 0; g <= n; ++g) {
      GapTarget gap{g - 1, g < n ? g : -1};
      const double cost = std::abs(slot_position(gap) - ego_.s);
      if (cost < best_cost) {
        best_cost = cost;
        best = gap;
      }
    }
    return best;
  }

  double slot_position(const GapTarget& gap) const {
    if (gap.front >= 0 && gap.rear >= 0) {
      return 0.5 * (platoon_[gap.front].s + platoon_[gap.rear].s);
    }
    if (gap.front >= 0) {  // behind the tail
      return platoon_[gap.front].s - spec_.vehicle_length - 12.0;
    }
    if (gap.rear >= 0) {  // ahead of the whole platoon
      return platoon_[gap.rear].s + spec_.vehicle_length + 14.0;
    }
    return ego_.s;  // empty target lane
  }

  double gap_reference_speed(const GapTarget& gap) const {
    if (gap.front >= 0) return platoon_[gap.front].v;
    if (gap.rear >= 0) return platoon_[gap.rear].v;
    return ego_.idm.desired_speed;
  }

  GapTarget select_gap(bool panic) const {
    const int n = static_cast<int>(platoon_.size());
    if (n == 0) return GapTarget{};
    if (panic) return nearest_gap();
    switch (policy_.kind) {
      case PolicyKind::kLateMerge:
      case PolicyKind::kEarlyMerge:
      case PolicyKind::kTargetGap: {
        const int idx = std::clamp(policy_.target_gap_index, 0, n);
        return GapTarget{idx - 1, idx < n ? idx : -1};
      }
      case PolicyKind::kHesitant:
        return nearest_gap();
    }
    return nearest_gap();
  }

  bool gap_acceptable(const GapTarget& gap, bool panic) const {
    // Merging happens into the adjacent slot, never across distance.
    if (std::abs(slot_position(gap) - ego_.s) > 25.0) return false;
    const double accept = policy_.gap_acceptance * (panic ? 0.45 : 1.0);
    if (gap.front >= 0) {
      const auto& f = platoon_[gap.front];
      const double lead_gap = f.s - ego_.s - spec_.vehicle_length;
      const double margin = std::max(0.0, ego_.v - f.v);
      const double required =
          std::max(accept * (1.5 + 0.35 * ego_.v), 2.5) + margin * margin / 4.0;
      if (lead_gap < required) return false;
    }
    if (gap.rear >= 0) {
      const auto& r = platoon_[gap.rear];
      const double lag_gap = ego_.s - r.s - spec_.vehicle_length;
      const double margin = std::max(0.0, r.v - ego_.v);
      const double required =
          std::max(accept * (1.5 + 0.35 * r.v), 2.5) + margin * margin / 4.0;
      if (lag_gap < required) return false;
      // The rear vehicle may not be closing fast; the ego being faster is
      // safe (the gap opens behind it).
      if (r.v - ego_.v > (panic ? 6.0 : 4.0)) return false;
    }
    return true;
  }

  void start_attempt(const GapTarget& gap) {
    end_attempt();
    target_ = gap;
    has_target_ = true;
    drew_resistance_ = false;
    attempt_age_ = 0.0;
  }

  void end_attempt() {
    if (reacting_follower_ >= 0) {
      platoon_[reacting_follower_].idm.time_headway =
          platoon_[reacting_follower_].normal_headway;
      reacting_follower_ = -1;
    }
    has_target_ = false;
  }

  // Once the targeted slot's follower detects the intent it decides once per
  // attempt: resist by tightening its headway, or yield by easing off.
  void maybe_draw_resistance() {
    if (!has_target_ || drew_resistance_ || target_.rear < 0) return;
    auto& follower = platoon_[target_.rear];
    if (std::abs(follower.s - ego_.s) > spec_.resistance.detection_range) return;
    drew_resistance_ = true;
    reacting_follower_ = target_.rear;
    if (resist_rng_.uniform() < spec_.resistance.probability) {
      follower.idm.time_headway = spec_.resistance.reduced_headway;
      ++diag_.resistance_triggers;
    } else {
      follower.idm.time_headway =
          std::max(follower.normal_headway, spec_.resistance.yield_headway);
    }
  }

  bool panic_mode() const {
    const double stop_dist = ego_.v * ego_.v / (2.0 * 1.6);
    return gate_gap() < std::max(30.0, stop_dist + 12.0);
  }

  void update_policy(double t) {
    if (phase_ == EgoPhase::kDone) return;

    if (phase_ == EgoPhase::kFollow) {
      const bool seek_now = gate_gap() <= policy_.commit_distance;
      if (seek_now) {
        phase_ = EgoPhase::kSeek;
        start_attempt(select_gap(panic_mode()));
      }
    }

    if (phase_ == EgoPhase::kSeek) {
      const bool panic = panic_mode();
      const GapTarget wanted = select_gap(panic);
      if (!has_target_) {
        start_attempt(wanted);
      } else if (!(wanted == target_)) {
        // Switch slots only when the new one is clearly easier to reach.
        const double gain = std::abs(slot_position(target_) - ego_.s) -
                            std::abs(slot_position(wanted) - ego_.s);
        if (panic || gain > 12.0) start_attempt(wanted);
      }
      maybe_draw_resistance();
      attempt_age_ += spec_.dt;
      if (gap_acceptable(target_, panic)) {
        phase_ = EgoPhase::kCommit;
        commit_elapsed_ = 0.0;
        if (diag_.merge_commit_time < 0.0) diag_.merge_commit_time = t;
      } else if (attempt_age_ > 4.0 && target_.rear >= 0) {
        // The slot never opened (likely resisted); drop back one gap.
        const int n = static_cast<int>(platoon_.size());
        const int next = target_.rear + 1;
        start_attempt(GapTarget{target_.rear, next < n ? next : -1});
      }
    } else if (phase_ == EgoPhase::kCommit) {
      // Abort when the slot collapses under the ego mid-commit.
      bool collapsed = false;
      if (target_.rear >= 0 &&
          ego_.s - platoon_[target_.rear].s - spec_.vehicle_length < 1.0) {
        collapsed = true;
      }
      if (target_.front >= 0 &&
          platoon_[target_.front].s - ego_.s - spec_.vehicle_length < 1.0) {
        collapsed = true;
      }
      if (collapsed) {
        phase_ = EgoPhase::kSeek;
        start_attempt(select_gap(panic_mode()));
        return;
      }
      commit_elapsed_ += spec_.dt;
      if (commit_elapsed_ >= spec_.commit_delay) {
        // The slot may have degraded during the lateral move; only switch
        // lanes if it is still acceptable under the lenient thresholds.
        if (!gap_acceptable(target_, true)) {
          phase_ = EgoPhase::kSeek;
          start_attempt(select_gap(panic_mode()));
          return;
        }
        ego_.lane = spec_.target_lane;
        phase_ = EgoPhase::kDone;
        diag_.merged = true;
        diag_.merge_complete_time = t;
        end_attempt();
      }
    }
  }

  double ego_accel() const {
    double a = std::numeric_limits<double>::infinity();

    // Hard constraint in the start lane.
    if (ego_.lane == spec_.ego_lane) {
      const double gap = std::max(gate_gap(), 0.2);
      a = std::min(a, idm_accel(ego_.v, gap, ego_.v, ego_.idm));
    }

    // Current-lane predecessor.
    if (ego_.lane == spec_.target_lane) {
      const int lead = platoon_leader_of(ego_.s);
      if (lead >= 0) {
        const double gap = platoon_[lead].s - ego_.s - spec_.vehicle_length;
        a = std::min(a, idm_accel(ego_.v, std::max(gap, 0.2), ego_.v - platoon_[lead].v,
                                  ego_.idm));
      }
    }

    // Target-lane front bound while committing.
    if (phase_ == EgoPhase::kCommit && has_target_ && target_.front >= 0) {
      const auto& f = platoon_[target_.front];
      const double gap = f.s - ego_.s - spec_.vehicle_length;
      a = std::min(a, idm_accel(ego_.v, std::max(gap, 0.2), ego_.v - f.v, ego_.idm));
    }

    // Policy speed target: free-flow desired speed, or slot alignment.
    double v_target = ego_.idm.desired_speed;
    if ((phase_ == EgoPhase::kSeek || phase_ == EgoPhase::kCommit) && has_target_) {
      const double err = slot_position(target_) - ego_.s;
      v_target = std::clamp(gap_reference_speed(target_) + 0.45 * err, 0.0,
                            ego_.idm.desired_speed);
    }
    const double v_ratio = ego_.v / std::max(v_target, 0.1);
    const double a_free =
        ego_.idm.max_accel * (1.0 - std::pow(v_ratio, ego_.idm.accel_exponent));
    a = std::min(a, a_free);

    return std::clamp(a, ego_.idm.hard_decel_floor, ego_.idm.max_accel);
  }

  void compute_accels(double t) {
    // Lead vehicle follows its profile exactly.
    if (!platoon_.empty()) {
      const double v_next = std::max(lead_speed(t + spec_.dt, spec_.lead), 0.0);
      platoon_[0].a = (v_next - platoon_[0].v) / spec_.dt;
    }
    for (std::size_t i = 1; i < platoon_.size(); ++i) {
      auto& veh = platoon_[i];
      // Predecessor is the nearest vehicle ahead in the lane, the ego
      // included once it has merged.
      double pred_s = platoon_[i - 1].s;
      double pred_v = platoon_[i - 1].v;
      if (ego_.lane == spec_.target_lane && ego_.s > veh.s && ego_.s < pred_s) {
        pred_s = ego_.s;
        pred_v = ego_.v;
      }
      const double gap = pred_s - veh.s - spec_.vehicle_length;
      veh.a = idm_accel(veh.v, gap, veh.v - pred_v, veh.idm);
    }
    ego_.a = ego_accel();
  }

  void record(double t) {
    tracks_[0].records.push_back({t, ego_.lane, ego_.s, ego_.v, ego_.a});
    for (std::size_t i = 0; i < platoon_.size(); ++i) {
      const auto& veh = platoon_[i];
      tracks_[i + 1].records.push_back({t, veh.lane, veh.s, veh.v, veh.a});
    }
  }

  void integrate(double t) {
    if (!platoon_.empty()) {
      platoon_[0].v = std::max(lead_speed(t + spec_.dt, spec_.lead), 0.0);
      platoon_[0].s += platoon_[0].v * spec_.dt;
    }
    for (std::size_t i = 1; i < platoon_.size(); ++i) {
      auto& veh = platoon_[i];
      veh.v = std::max(veh.v + veh.a * spec_.dt, 0.0);
      veh.s += veh.v * spec_.dt;
    }
    ego_.v = std::max(ego_.v + ego_.a * spec_.dt, 0.0);
    ego_.s += ego_.v * spec_.dt;
  }

  void check_collisions() const {
    for (std::size_t i = 1; i < platoon_.size(); ++i) {
      double pred_s = platoon_[i - 1].s;
      if (ego_.lane == spec_.target_lane && ego_.s > platoon_[i].s && ego_.s < pred_s) {
        pred_s = ego_.s;
      }
      if (pred_s - platoon_[i].s - spec_.vehicle_length <= 0.0) {
        throw CollisionError("platoon vehicle " + platoon_[i].id + " hit its leader");
      }
    }
    if (ego_.lane == spec_.target_lane) {
      const int lead = platoon_leader_of(ego_.s);
      if (lead >= 0 &&
          platoon_[lead].s - ego_.s - spec_.vehicle_length <= 0.0) {
        throw CollisionError("ego hit platoon vehicle " + platoon_[lead].id);
      }
    }
    if (ego_.lane == spec_.ego_lane && spec_.physical_obstacle &&
        spec_.constraint_s - spec_.vehicle_length - ego_.s <= 0.0) {
      throw CollisionError("ego hit the obstacle");
    }
  }

  ScenarioSpec spec_;
  EgoPolicy policy_;
  Rng platoon_rng_;
  Rng resist_rng_;
  SimVehicle ego_;
  std::vector<SimVehicle> platoon_;  // [0] is the lead vehicle when non-empty
  std::vector<VehicleTrack> tracks_;
  EgoPhase phase_ = EgoPhase::kFollow;
  GapTarget target_;
  bool has_target_ = false;
  bool drew_resistance_ = false;
  int reacting_follower_ = -1;
  double attempt_age_ = 0.0;
  double commit_elapsed_ = 0.0;
  RunDiagnostics diag_;
};

}  // namespace

RunResult run_event(const ScenarioSpec& spec, const EgoPolicy& policy, std::uint64_t seed) {
  EventSimulator sim(spec, policy, seed);
  return sim.run();
}

CohortDataset generate_cohort(std::span<const ScenarioSpec> specs,
                              std::span<const EgoPolicy> policies,
                              std::uint64_t base_seed) {
  if (policies.size() < 2) {
    throw InputError("cohort generation needs at least two ego policies");
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (std::size_t j = i + 1; j < specs.size(); ++j) {
      if (specs[i].event_id == specs[j].event_id) {
        throw ConfigError("duplicate event id '" + specs[i].event_id + "'");
      }
    }
  }
  CohortDataset dataset;
  for (std::size_t e = 0; e < specs.size(); ++e) {
    SimulatedEvent event;
    event.spec = specs[e];
    event.seed = derive_seed(base_seed, e + 1);
    for (std::size_t p = 0; p < policies.size(); ++p) {
      SimulatedRun run;
      run.run_id = "r" + std::string(p < 10 ? "0" : "") + std::to_string(p);
      run.policy = policies[p];
      run.result = run_event(event.spec, policies[p], event.seed);
      event.runs.push_back(std::move(run));
    }
    dataset.events.push_back(std::move(event));
  }
  return dataset;
}

std::vector<ScenarioSpec> desk_scenarios(int count) {
  std::vector<ScenarioSpec> all;

  auto incident = [](const std::string& id, double constraint, double platoon_start,
                     double base_speed, int size) {
    ScenarioSpec s;
    s.event_id = id;
    s.kind = ScenarioKind::kIncident;
    s.physical_obstacle = true;
    s.route_length = 1000.0;
    s.constraint_s = constraint;
    s.platoon_start_s = platoon_start;
    s.platoon_size = size;
    s.lead = {base_speed, 1.5, 40.0};
    s.window_start_s = 100.0;
    s.window_end_s = constraint + 150.0;
    s.speed_limit = 22.2;
    s.ego_start_speed = 14.0;
    return s;
  };
  auto off_ramp = [](const std::string& id, double gate, double platoon_start,
                     double base_speed, int size) {
    ScenarioSpec s;
    s.event_id = id;
    s.kind = ScenarioKind::kOffRamp;
    s.physical_obstacle = false;
    s.route_length = 800.0;
    s.constraint_s = gate;
    s.platoon_start_s = platoon_start;
    s.platoon_size = size;
    s.lead = {base_speed, 1.2, 36.0};
    s.window_start_s = 80.0;
    s.window_end_s = gate;
    s.speed_limit = 19.4;
    s.ego_start_speed = 13.0;
    return s;
  };
  auto on_ramp = [](const std::string& id, double lane_end, double platoon_start,
                    double base_speed, int size) {
    ScenarioSpec s;
    s.event_id = id;
    s.kind = ScenarioKind::kOnRamp;
    s.physical_obstacle = false;
    s.route_length = 800.0;
    s.constraint_s = lane_end;
    s.platoon_start_s = platoon_start;
    s.platoon_size = size;
    s.lead = {base_speed, 1.5, 45.0};
    s.window_start_s = 60.0;
    s.window_end_s = lane_end + 100.0;
    s.speed_limit = 16.7;
    s.ego_start_speed = 9.0;
    return s;
  };

  all.push_back(incident("A1", 650.0, 320.0, 8.3, 10));
  all.push_back(incident("A2", 700.0, 350.0, 7.5, 11));
  all.push_back(incident("A3", 600.0, 300.0, 9.0, 9));
  all.push_back(incident("A4", 680.0, 330.0, 6.9, 12));
  all.push_back(off_ramp("B1", 520.0, 250.0, 7.0, 8));
  all.push_back(off_ramp("B2", 560.0, 280.0, 7.8, 9));
  all.push_back(off_ramp("B3", 500.0, 240.0, 6.4, 10));
  all.push_back(on_ramp("C1", 460.0, 220.0, 7.5, 12));
  all.push_back(on_ramp("C2", 500.0, 250.0, 8.2, 10));
  all.push_back(on_ramp("C3", 480.0, 180.0, 6.7, 10));

  if (count < 1 || count > static_cast<int>(all.size())) {
    throw ConfigError("desk preset supports 1 to " + std::to_string(all.size()) + " events");
  }
  all.resize(count);
  return all;
}

std::vector<EgoPolicy> desk_policies(int count) {
  if (count < 2) throw ConfigError("need at least two policies");
  std::vector<EgoPolicy> policies;
  policies.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double alpha = (count == 1) ? 0.0 : static_cast<double>(i) / (count - 1);
    EgoPolicy p;
    char label[64];
    switch (i % 4) {
      case 0:
        // Pushes to the platoon front; the most aggressive cut in ahead of
        // the lead vehicle.
        p.kind = PolicyKind::kLateMerge;
        p.desired_speed_factor = 0.95 + 0.15 * alpha;
        p.commit_distance = 420.0 - 160.0 * alpha;
        p.gap_acceptance = 0.80 - 0.30 * alpha;
        p.target_gap_index = (alpha > 0.7) ? 0 : 1;
        p.ego_time_headway = 0.9 + 0.3 * alpha;
        std::snprintf(label, sizeof(label), "late-%.2f", alpha);
        break;
      case 1:
        // Settles promptly into the rear part of the platoon.
        p.kind = PolicyKind::kEarlyMerge;
        p.desired_speed_factor = 0.85 + 0.25 * alpha;
        p.commit_distance = 1e9;
        p.gap_acceptance = 0.95 - 0.25 * alpha;
        p.target_gap_index = 5 + static_cast<int>(alpha * 4.0);
        p.ego_time_headway = 1.0 + 0.8 * alpha;
        std::snprintf(label, sizeof(label), "early%d-%.2f", p.target_gap_index, alpha);
        break;
      case 2:
        p.kind = PolicyKind::kTargetGap;
        p.desired_speed_factor = 0.90 + 0.20 * alpha;
        p.commit_distance = 1e9;
        p.gap_acceptance = 0.85 - 0.25 * alpha;
        p.target_gap_index = 1 + static_cast<int>(alpha * 7.0);
        p.ego_time_headway = 1.0 + 0.5 * alpha;
        std::snprintf(label, sizeof(label), "gap%d-%.2f", p.target_gap_index, alpha);
        break;
      default:
        p.kind = PolicyKind::kHesitant;
        p.desired_speed_factor = 0.70 + 0.18 * alpha;
        p.commit_distance = 1e9;
        p.gap_acceptance = 1.35 - 0.25 * alpha;
        p.ego_time_headway = 1.5 + 1.0 * alpha;
        std::snprintf(label, sizeof(label), "hesitant-%.2f", alpha);
        break;
    }
    p.label = label;
    policies.push_back(p);
  }
  return policies;
}

}  // namespace passim
