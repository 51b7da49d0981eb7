#include "passim/trajectory.hpp"

#include <cmath>

#include "doctest.h"
#include "passim/errors.hpp"
#include "passim/geometry.hpp"
#include "passim/rng.hpp"

using namespace passim;

namespace {

VehicleTrack uniform_track(const std::string& id, double v, double t0, double s0, int ticks,
                           int lane = 0, double dt = 0.05) {
  VehicleTrack track;
  track.vehicle_id = id;
  for (int i = 0; i < ticks; ++i) {
    track.records.push_back({t0 + i * dt, lane, s0 + v * i * dt, v, 0.0});
  }
  return track;
}

RouteMeta two_lane_route(double limit = 22.2) {
  RouteMeta route;
  route.speed_limit = limit;
  route.lanes.push_back({0, {1}, {}});
  route.lanes.push_back({1, {0}, {}});
  return route;
}

}  // namespace

TEST_CASE("route projection") {
  SUBCASE("axis-aligned segment") {
    RoutePolyline route({{0.0, 0.0}, {100.0, 0.0}});
    CHECK(route.project(25.0, 1.0) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(route.project(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("two-segment corner, against brute-force sampling") {
    RoutePolyline route({{0.0, 0.0}, {50.0, 0.0}, {50.0, 50.0}});
    const double s = route.project(50.0, 10.0);
    CHECK(s == doctest::Approx(60.0).epsilon(1e-9));

    // Brute force: walk the polyline at 1 mm resolution.
    double best_d2 = 1e300, best_s = 0.0;
    for (double u = 0.0; u <= 100.0; u += 0.001) {
      const double x = (u <= 50.0) ? u : 50.0;
      const double y = (u <= 50.0) ? 0.0 : u - 50.0;
      const double d2 = (x - 50.0) * (x - 50.0) + (y - 10.0) * (y - 10.0);
      if (d2 < best_d2) {
        best_d2 = d2;
        best_s = u;
      }
    }
    CHECK(s == doctest::Approx(best_s).epsilon(1e-6));
  }
  SUBCASE("off-route error") {
    RoutePolyline route({{0.0, 0.0}, {100.0, 0.0}});
    CHECK_THROWS_AS(route.project(50.0, 11.0), OffRouteError);
    CHECK_NOTHROW(route.project(50.0, 9.9));
  }
}

TEST_CASE("snapshot building") {
  const auto route = two_lane_route();
  SUBCASE("bumper-to-bumper leader gap") {
    const auto ego = uniform_track("ego", 0.0, 0.0, 100.0, 1);
    const auto other = uniform_track("a", 0.0, 0.0, 150.0, 1);
    const auto snaps = build_snapshots(ego, std::vector<VehicleTrack>{other}, route, {});
    REQUIRE(snaps.size() == 1);
    const auto* lane = snaps[0].find_lane(0);
    REQUIRE(lane != nullptr);
    REQUIRE(lane->leader_gap.has_value());
    CHECK(*lane->leader_gap == doctest::Approx(45.5).epsilon(1e-12));
    CHECK(*lane->leader_speed == 0.0);
  }
  SUBCASE("nearest vehicle wins, followers ignored") {
    const auto ego = uniform_track("ego", 10.0, 0.0, 100.0, 10);
    std::vector<VehicleTrack> others;
    others.push_back(uniform_track("near", 5.0, 0.0, 130.0, 10));
    others.push_back(uniform_track("far", 5.0, 0.0, 200.0, 10));
    others.push_back(uniform_track("behind", 5.0, 0.0, 50.0, 10));
    const auto snaps = build_snapshots(ego, others, route, {});
    const auto* lane = snaps[0].find_lane(0);
    REQUIRE(lane->leader_gap.has_value());
    CHECK(*lane->leader_gap == doctest::Approx(30.0 - 4.5).epsilon(1e-12));
    // Every other same-lane vehicle ahead is at least this far.
    CHECK(*lane->leader_gap <= 200.0 - 100.0 - 4.5);
  }
  SUBCASE("empty scene leaves every lane free") {
    const auto ego = uniform_track("ego", 10.0, 0.0, 100.0, 3);
    const auto snaps = build_snapshots(ego, std::vector<VehicleTrack>{}, route, {});
    for (const auto& snap : snaps) {
      CHECK(snap.candidate_lanes.size() == 2);
      for (const auto& lane : snap.candidate_lanes) CHECK(lane.free_lane());
    }
  }
  SUBCASE("vehicle behind only is ignored") {
    const auto ego = uniform_track("ego", 10.0, 0.0, 100.0, 1);
    const auto other = uniform_track("b", 10.0, 0.0, 50.0, 1);
    const auto snaps = build_snapshots(ego, std::vector<VehicleTrack>{other}, route, {});
    CHECK(snaps[0].find_lane(0)->free_lane());
  }
  SUBCASE("sensing range cuts distant leaders") {
    const auto ego = uniform_track("ego", 10.0, 0.0, 0.0, 1);
    const auto other = uniform_track("far", 10.0, 0.0, 400.0, 1);
    const auto snaps = build_snapshots(ego, std::vector<VehicleTrack>{other}, route, {});
    CHECK(snaps[0].find_lane(0)->free_lane());
  }
  SUBCASE("obstacles and blocked lanes") {
    RouteMeta blocked = two_lane_route();
    blocked.lanes[1].blocked.push_back({150.0, 1e18});
    blocked.obstacles.push_back({0, 180.0});
    auto ego = uniform_track("ego", 10.0, 0.0, 100.0, 2, 0);
    ego.records[1].s = 160.0;  // past the block
    const auto snaps = build_snapshots(ego, std::vector<VehicleTrack>{}, blocked, {});
    CHECK(snaps[0].candidate_lanes.size() == 2);
    REQUIRE(snaps[0].find_lane(0)->obstacle_gap.has_value());
    CHECK(*snaps[0].find_lane(0)->obstacle_gap == doctest::Approx(75.5).epsilon(1e-12));
    CHECK(snaps[1].candidate_lanes.size() == 1);  // lane 1 blocked at s=160
  }
  SUBCASE("snapshot count equals ego tick count") {
    const auto ego = uniform_track("ego", 14.0, 0.0, 0.0, 137);
    const auto other = uniform_track("a", 8.0, 0.0, 60.0, 137);
    const auto snaps = build_snapshots(ego, std::vector<VehicleTrack>{other}, route, {});
    CHECK(snaps.size() == ego.records.size());
  }
  SUBCASE("mismatched grids raise a resampling error") {
    const auto ego = uniform_track("ego", 10.0, 0.0, 0.0, 10);
    const auto other = uniform_track("a", 10.0, 0.013, 50.0, 10);
    CHECK_THROWS_AS(build_snapshots(ego, std::vector<VehicleTrack>{other}, route, {}),
                    ResampleError);
  }
  SUBCASE("missing route metadata is a config error") {
    const auto ego = uniform_track("ego", 10.0, 0.0, 0.0, 2);
    CHECK_THROWS_AS(build_snapshots(ego, std::vector<VehicleTrack>{}, RouteMeta{}, {}),
                    ConfigError);
  }
}

TEST_CASE("resampling onto a grid") {
  const auto track = uniform_track("a", 10.0, 0.013, 50.0, 100);
  std::vector<double> grid;
  for (int i = 0; i < 90; ++i) grid.push_back(0.05 + 0.05 * i);
  const auto resampled = resample_to_grid(track, grid);
  CHECK(resampled.records.size() <= grid.size());
  for (const auto& rec : resampled.records) {
    // Linear motion: interpolation is exact.
    CHECK(rec.s == doctest::Approx(50.0 + 10.0 * (rec.time - 0.013)).epsilon(1e-9));
  }
}

TEST_CASE("travel time") {
  EventWindow window{"e", 0.0, 500.0, {}};
  SUBCASE("uniform motion") {
    const auto track = uniform_track("a", 10.0, 0.0, -10.0, 1300);
    CHECK(travel_time(track, window) == doctest::Approx(50.0).epsilon(1e-12));
  }
  SUBCASE("interpolated crossings against a finer resampling") {
    // Accelerating track; crossings land between ticks.
    auto make = [](double dt) {
      VehicleTrack t;
      t.vehicle_id = "a";
      for (int i = 0;; ++i) {
        const double time = i * dt;
        const double s = -7.3 + 4.0 * time + 0.4 * time * time;
        t.records.push_back({time, 0, s, 4.0 + 0.8 * time, 0.8});
        if (s > 520.0) break;
      }
      return t;
    };
    const double coarse = travel_time(make(0.05), window);
    const double fine = travel_time(make(0.005), window);
    // Linear crossing interpolation on a curved path: discretization error
    // shrinks quadratically with the step.
    CHECK(coarse == doctest::Approx(fine).epsilon(2e-5));
  }
  SUBCASE("incomplete travel") {
    const auto track = uniform_track("a", 10.0, 0.0, 0.0, 100);  // stops at s=49.5
    CHECK_THROWS_AS(travel_time(track, window), IncompleteTravelError);
  }
  SUBCASE("time-translation invariance") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const double shift = rng.uniform(-50.0, 50.0);
      auto base = uniform_track("a", 12.0, 0.0, -3.0, 900);
      auto shifted = base;
      for (auto& rec : shifted.records) rec.time += shift;
      CHECK(travel_time(base, window) ==
            doctest::Approx(travel_time(shifted, window)).epsilon(1e-9));
    }
  }
}
