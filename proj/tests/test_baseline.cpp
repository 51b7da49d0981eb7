#include "passim/baseline.hpp"

#include <cmath>

#include "doctest.h"
#include "passim/errors.hpp"
#include "passim/rng.hpp"

using namespace passim;

namespace {

SceneSnapshot current_lane_scene(std::optional<double> leader_speed,
                                 std::optional<double> leader_gap,
                                 std::optional<double> obstacle_gap, double v_limit = 20.0) {
  SceneSnapshot snap;
  snap.ego_speed = 10.0;
  snap.ego_lane = 0;
  snap.speed_limit = v_limit;
  LaneContext lane;
  lane.lane_id = 0;
  lane.leader_speed = leader_speed;
  lane.leader_gap = leader_gap;
  lane.obstacle_gap = obstacle_gap;
  snap.candidate_lanes.push_back(lane);
  return snap;
}

}  // namespace

TEST_CASE("baseline examples") {
  BaselineConfig cfg;
  CHECK(baseline_instant(current_lane_scene({}, {}, {}), cfg) == 0.0);
  // Stationary obstacle at a vanishing gap saturates to 1.
  CHECK(baseline_instant(current_lane_scene({}, {}, 0.0), cfg) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(baseline_instant(current_lane_scene(10.0, 50.0, {}), cfg) ==
        doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("baseline only sees the ego lane") {
  BaselineConfig cfg;
  auto snap = current_lane_scene({}, {}, {});
  LaneContext busy;
  busy.lane_id = 1;
  busy.leader_speed = 2.0;
  busy.leader_gap = 5.0;
  snap.candidate_lanes.push_back(busy);
  CHECK(baseline_instant(snap, cfg) == 0.0);
}

TEST_CASE("baseline bounds and monotonicity") {
  BaselineConfig cfg;
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double v_limit = rng.uniform(5.0, 40.0);
    const double gap = rng.uniform(0.0, 400.0);
    const double speed = rng.uniform(0.0, v_limit * 1.2);
    const double value = baseline_instant(current_lane_scene(speed, gap, {}, v_limit), cfg);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);

    // Nonincreasing in distance.
    const double farther = baseline_instant(current_lane_scene(speed, gap + 10.0, {}, v_limit),
                                            cfg);
    CHECK(farther <= value + 1e-15);
    // Nondecreasing as the leader slows.
    if (speed >= 1.0) {
      const double slower = baseline_instant(current_lane_scene(speed - 1.0, gap, {}, v_limit),
                                             cfg);
      CHECK(slower >= value - 1e-15);
    }
    // An obstacle at the same gap is at least as restrictive as any leader.
    const double obstacle = baseline_instant(current_lane_scene({}, {}, gap, v_limit), cfg);
    CHECK(obstacle >= value - 1e-15);
  }
}

TEST_CASE("baseline aggregation") {
  CHECK(baseline_aggregate(std::vector<double>{0.3, 0.3, 0.3}) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(baseline_aggregate(std::vector<double>{0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(baseline_aggregate(std::vector<double>{}), InputError);

  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> values;
    const int n = 1 + static_cast<int>(rng.uniform() * 40.0);
    for (int j = 0; j < n; ++j) values.push_back(rng.uniform());
    const double mean = baseline_aggregate(values);
    CHECK(mean >= 0.0);
    CHECK(mean <= 1.0);
  }
}
