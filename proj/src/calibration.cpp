#include "passim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "passim/errors.hpp"

namespace passim {

std::vector<double> rank_with_ties(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot rank an empty vector");
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the average 1-based rank.
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("spearman requires equal-length vectors");
  if (x.size() < 2) throw InputError("spearman requires at least two observations");
  const std::vector<double> rx = rank_with_ties(x);
  const std::vector<double> ry = rank_with_ties(y);

  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw CorrelationUndefinedError("rank correlation undefined: a ranked vector is constant");
  }
  return sxy / std::sqrt(sxx * syy);
}

double event_loss(double r) {
  const double r2 = r * r;
  double loss = 1.0 - r2;
  if (r < 0.0) loss += 10.0 * std::abs(r);
  if (r2 < 0.8) loss += 10.0 * (0.8 - r2) * (0.8 - r2);
  return loss;
}

double aggregate_pass_from_cache(const CachedVehicleSeries& series, double k1, double k2) {
  const std::size_t n = series.available.size();
  if (n == 0) throw InputError("cached series is empty");
  if (series.delta.size() != n) throw InputError("cached series arrays disagree in length");
  double base = 0.0, neg = 0.0, pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = series.available[i];
    const double d = series.delta[i];
    base += a;
    if (d != 0.0) {
      if (a <= 0.0) {
        neg += a * std::tanh(k1 * d);
      } else {
        pos += a * std::tanh(k2 * d);
      }
    }
  }
  return (base + neg + pos) / static_cast<double>(n);
}

namespace {

struct EventGroup {
  std::string event_id;
  std::vector<const CachedVehicleSeries*> vehicles;  // completed only
  int excluded = 0;
};

std::vector<EventGroup> group_events(const CalibrationDataset& dataset) {
  std::vector<EventGroup> groups;
  for (const auto& series : dataset.series) {
    EventGroup* group = nullptr;
    for (auto& g : groups) {
      if (g.event_id == series.event_id) {
        group = &g;
        break;
      }
    }
    if (group == nullptr) {
      groups.push_back({series.event_id, {}, 0});
      group = &groups.back();
    }
    if (series.completed) {
      group->vehicles.push_back(&series);
    } else {
      ++group->excluded;
    }
  }
  return groups;
}

}  // namespace

std::vector<EventEvaluation> evaluate_events(const CalibrationDataset& dataset,
                                             double k1, double k2,
                                             std::vector<std::string>* warnings) {
  if (!(k1 < 0.0 && k2 > 0.0)) throw InputError("coefficients must satisfy k1 < 0 < k2");
  std::vector<EventEvaluation> evaluations;
  for (const auto& group : group_events(dataset)) {
    if (warnings != nullptr && group.excluded > 0) {
      warnings->push_back("event " + group.event_id + ": " + std::to_string(group.excluded) +
                          " incomplete vehicle(s) excluded from ranking");
    }
    if (group.vehicles.size() < 2) {
      if (warnings != nullptr) {
        warnings->push_back("event " + group.event_id +
                            " excluded: fewer than two completed vehicles");
      }
      continue;
    }
    EventEvaluation eval;
    eval.event_id = group.event_id;
    std::vector<double> metric, tt;
    for (const auto* v : group.vehicles) {
      const double aggregate = aggregate_pass_from_cache(*v, k1, k2);
      eval.vehicles.push_back({v->vehicle_id, aggregate, v->travel_time});
      metric.push_back(aggregate);
      tt.push_back(v->travel_time);
    }
    try {
      eval.r = spearman(metric, tt);
    } catch (const CorrelationUndefinedError&) {
      if (warnings != nullptr) {
        warnings->push_back("event " + group.event_id +
                            " excluded: rank correlation undefined (constant vector)");
      }
      continue;
    }
    eval.r_squared = eval.r * eval.r;
    evaluations.push_back(std::move(eval));
  }
  return evaluations;
}

double total_loss(double k1, double k2, const CalibrationDataset& dataset,
                  std::vector<std::string>* warnings) {
  const auto evaluations = evaluate_events(dataset, k1, k2, warnings);
  double loss = 0.0;
  for (const auto& eval : evaluations) loss += event_loss(eval.r);
  if (evaluations.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  return loss;
}

void GridSpec::validate() const {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  if (!(k1_min <= k1_max) || !(k1_max < 0.0)) {
    throw ConfigError("k1 grid must lie strictly below zero");
  }
  if (!(k2_min <= k2_max) || !(k2_min > 0.0)) {
    throw ConfigError("k2 grid must lie strictly above zero");
  }
}

namespace {

std::vector<double> grid_axis(double lo, double hi, double step) {
  std::vector<double> values;
  for (int i = 0;; ++i) {
    const double value = lo + i * step;
    if (value > hi + step * 1e-6) break;
    values.push_back(value);
  }
  return values;
}

}  // namespace

std::vector<double> GridSpec::k1_values() const { return grid_axis(k1_min, k1_max, step); }
std::vector<double> GridSpec::k2_values() const { return grid_axis(k2_min, k2_max, step); }

CalibrationResult grid_search(const CalibrationDataset& dataset, const GridSpec& spec) {
  spec.validate();
  const std::vector<double> k1s = spec.k1_values();
  const std::vector<double> k2s = spec.k2_values();

  const auto groups = group_events(dataset);
  std::vector<const EventGroup*> usable;
  for (const auto& g : groups) {
    if (g.vehicles.size() >= 2) usable.push_back(&g);
  }
  if (usable.empty()) {
    throw InputError("calibration dataset has no event with two or more completed vehicles");
  }

  // The aggregate splits into a coefficient-free part plus one sum per
  // regime, so each axis is swept once per vehicle instead of once per grid
  // point. Sums accumulate in tick order, matching the direct evaluation
  // bit for bit.
  struct VehicleSums {
    double base = 0.0;
    double count = 1.0;
    std::vector<double> neg;  // indexed by k1
    std::vector<double> pos;  // indexed by k2
  };
  std::vector<std::vector<VehicleSums>> sums(usable.size());
  for (std::size_t e = 0; e < usable.size(); ++e) {
    sums[e].resize(usable[e]->vehicles.size());
    for (std::size_t v = 0; v < usable[e]->vehicles.size(); ++v) {
      const auto& series = *usable[e]->vehicles[v];
      const std::size_t n = series.available.size();
      if (n == 0) throw InputError("cached series is empty");
      VehicleSums& vs = sums[e][v];
      vs.count = static_cast<double>(n);
      vs.neg.assign(k1s.size(), 0.0);
      vs.pos.assign(k2s.size(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double a = series.available[i];
        const double d = series.delta[i];
        vs.base += a;
        if (d == 0.0) continue;
        if (a <= 0.0) {
          for (std::size_t k = 0; k < k1s.size(); ++k) vs.neg[k] += a * std::tanh(k1s[k] * d);
        } else {
          for (std::size_t k = 0; k < k2s.size(); ++k) vs.pos[k] += a * std::tanh(k2s[k] * d);
        }
      }
    }
  }

  CalibrationResult result;
  result.grid.reserve(k1s.size() * k2s.size());
  std::vector<std::vector<double>> loss(k1s.size(), std::vector<double>(k2s.size(), 0.0));
  std::vector<double> metric, tt;
  for (std::size_t i1 = 0; i1 < k1s.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < k2s.size(); ++i2) {
      double point_loss = 0.0;
      bool any_event = false;
      for (std::size_t e = 0; e < usable.size(); ++e) {
        metric.clear();
        tt.clear();
        for (std::size_t v = 0; v < usable[e]->vehicles.size(); ++v) {
          const VehicleSums& vs = sums[e][v];
          metric.push_back((vs.base + vs.neg[i1] + vs.pos[i2]) / vs.count);
          tt.push_back(usable[e]->vehicles[v]->travel_time);
        }
        try {
          point_loss += event_loss(spearman(metric, tt));
          any_event = true;
        } catch (const CorrelationUndefinedError&) {
          // Event is unusable at this grid point; skip it.
        }
      }
      loss[i1][i2] = any_event ? point_loss : std::numeric_limits<double>::infinity();
      result.grid.push_back({k1s[i1], k2s[i2], loss[i1][i2]});
    }
  }

  // Argmin with deterministic tie-breaking: smallest |k1| first, then
  // smallest k2. k1 values ascend toward zero, so scan them in reverse.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i1 = 0, best_i2 = 0;
  for (std::size_t r1 = 0; r1 < k1s.size(); ++r1) {
    const std::size_t i1 = k1s.size() - 1 - r1;
    for (std::size_t i2 = 0; i2 < k2s.size(); ++i2) {
      if (loss[i1][i2] < best) {
        best = loss[i1][i2];
        best_i1 = i1;
        best_i2 = i2;
      }
    }
  }
  if (!std::isfinite(best)) {
    throw InputError("calibration failed: no usable event at any grid point");
  }

  result.k1 = k1s[best_i1];
  result.k2 = k2s[best_i2];
  result.loss = best;
  result.events = evaluate_events(dataset, result.k1, result.k2, &result.warnings);
  double sum_r2 = 0.0;
  for (const auto& eval : result.events) sum_r2 += eval.r_squared;
  result.mean_r_squared = result.events.empty() ? 0.0 : sum_r2 / result.events.size();
  return result;
}

}  // namespace passim
