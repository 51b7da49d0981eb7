#pragma once

#include <span>
#include <string>
#include <vector>

namespace passim {

// Ascending fractional ranks; tied values receive the mean of their positions.
std::vector<double> rank_with_ties(std::span<const double> values);

// Spearman rank correlation: Pearson correlation of the fractional ranks,
// which is exact under ties. Throws CorrelationUndefinedError when either
// vector is constant after ranking.
double spearman(std::span<const double> x, std::span<const double> y);

// Per-event composite loss over the rank correlation:
//   (1 - r^2) + [r < 0] * 10 * |r| + [r^2 < 0.8] * 10 * (0.8 - r^2)^2
double event_loss(double r);

struct VehicleOutcome {
  std::string vehicle_id;
  double aggregate_metric = 0.0;
  double travel_time = 0.0;
};

struct EventEvaluation {
  std::string event_id;
  std::vector<VehicleOutcome> vehicles;
  double r = 0.0;          // Spearman between aggregate metric and travel time
  double r_squared = 0.0;  // rank-R^2
};

// Cached per-tick quantities that do not depend on (k1, k2): the available
// space and its per-tick change. Re-scoring a vehicle for a new coefficient
// pair only needs these plus the travel time.
struct CachedVehicleSeries {
  std::string event_id;
  std::string vehicle_id;
  std::vector<double> available;  // A_t
  std::vector<double> delta;      // A_t - A_{t-1}, zero on the first tick
  double travel_time = 0.0;
  bool completed = true;          // false: excluded from ranking
};

struct CalibrationDataset {
  std::vector<CachedVehicleSeries> series;
};

// Time-aggregated metric recomputed from a cached series under (k1, k2).
double aggregate_pass_from_cache(const CachedVehicleSeries& series, double k1, double k2);

// Sum of event losses across the dataset under (k1, k2). Events with fewer
// than two completed vehicles or an undefined correlation are excluded with a
// warning. Throws InputError when k1 < 0 < k2 does not hold.
double total_loss(double k1, double k2, const CalibrationDataset& dataset,
                  std::vector<std::string>* warnings = nullptr);

// Per-event evaluations (aggregates, r, R^2) at a fixed coefficient pair.
std::vector<EventEvaluation> evaluate_events(const CalibrationDataset& dataset,
                                             double k1, double k2,
                                             std::vector<std::string>* warnings = nullptr);

struct GridSpec {
  double k1_min = -1.0;
  double k1_max = -0.01;
  double k2_min = 0.01;
  double k2_max = 1.0;
  double step = 0.01;

  std::vector<double> k1_values() const;
  std::vector<double> k2_values() const;
  void validate() const;  // throws ConfigError
};

struct GridPoint {
  double k1 = 0.0;
  double k2 = 0.0;
  double loss = 0.0;
};

struct CalibrationResult {
  double k1 = 0.0;
  double k2 = 0.0;
  double loss = 0.0;
  std::vector<GridPoint> grid;                  // full surface, row-major in k1 then k2
  std::vector<EventEvaluation> events;          // per-event stats at the optimum
  double mean_r_squared = 0.0;                  // over included events, at the optimum
  std::vector<std::string> warnings;
};

// Exhaustive search over the coefficient grid. Ties are broken toward the
// smallest |k1|, then the smallest k2. Throws InputError when no event in the
// dataset is usable.
CalibrationResult grid_search(const CalibrationDataset& dataset, const GridSpec& spec);

}  // namespace passim
