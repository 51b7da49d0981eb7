#include "passim/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "passim/errors.hpp"

namespace passim {

void BaselineConfig::validate() const {
  if (!(ref_gap > 0.0)) throw ConfigError("baseline ref_gap must be positive");
}

namespace {

double score(double constraint_speed, double gap, double v_limit, double ref_gap) {
  const double shortfall = std::clamp((v_limit - constraint_speed) / v_limit, 0.0, 1.0);
  return shortfall * std::exp(-gap / ref_gap);
}

}  // namespace

double baseline_instant(const SceneSnapshot& snapshot, const BaselineConfig& cfg) {
  cfg.validate();
  if (!(snapshot.speed_limit > 0.0)) throw InputError("snapshot speed limit must be positive");
  const LaneContext* lane = snapshot.find_lane(snapshot.ego_lane);
  if (lane == nullptr) throw InputError("ego lane missing from snapshot candidates");

  double value = 0.0;
  if (lane->leader_gap) {
    value = std::max(value, score(lane->leader_speed.value_or(0.0), *lane->leader_gap,
                                  snapshot.speed_limit, cfg.ref_gap));
  }
  if (lane->obstacle_gap) {
    value = std::max(value, score(0.0, *lane->obstacle_gap, snapshot.speed_limit, cfg.ref_gap));
  }
  return value;
}

double baseline_aggregate(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot aggregate an empty series");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace passim
