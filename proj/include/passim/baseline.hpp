#pragma once

#include <span>

#include "passim/trajectory.hpp"

namespace passim {

struct BaselineConfig {
  double ref_gap = 50.0;  // m, spacing scale of the proximity factor

  void validate() const;  // throws ConfigError
};

// Reference instantaneous inefficiency score in [0, 1], computed from the
// ego's current lane only: the shortfall of the constraint speed below the
// limit, discounted by spacing. A free current lane scores 0; a static
// obstacle at vanishing gap scores 1. Higher values mean lower efficiency.
double baseline_instant(const SceneSnapshot& snapshot, const BaselineConfig& cfg);

// Arithmetic mean over event ticks. Throws InputError on an empty series.
double baseline_aggregate(std::span<const double> values);

}  // namespace passim
