#include "passim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "passim/errors.hpp"

namespace passim {

RoutePolyline::RoutePolyline(std::vector<RoutePoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw InputError("route polyline needs at least two points");
  }
  cumulative_.resize(points_.size());
  cumulative_[0] = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double dx = points_[i].x - points_[i - 1].x;
    const double dy = points_[i].y - points_[i - 1].y;
    const double len = std::hypot(dx, dy);
    if (len <= 0.0) {
      throw InputError("route polyline has a zero-length segment");
    }
    cumulative_[i] = cumulative_[i - 1] + len;
  }
}

double RoutePolyline::project(double x, double y, double lateral_tol) const {
  double best_dist2 = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const RoutePoint& a = points_[i - 1];
    const RoutePoint& b = points_[i];
    const double ux = b.x - a.x;
    const double uy = b.y - a.y;
    const double seg_len2 = ux * ux + uy * uy;
    double t = ((x - a.x) * ux + (y - a.y) * uy) / seg_len2;
    t = std::clamp(t, 0.0, 1.0);
    const double px = a.x + t * ux;
    const double py = a.y + t * uy;
    const double dist2 = (x - px) * (x - px) + (y - py) * (y - py);
    if (dist2 < best_dist2) {
      best_dist2 = dist2;
      best_s = cumulative_[i - 1] + t * std::sqrt(seg_len2);
    }
  }
  if (std::sqrt(best_dist2) > lateral_tol) {
    throw OffRouteError("point (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") is " + std::to_string(std::sqrt(best_dist2)) +
                        " m from the route (tolerance " + std::to_string(lateral_tol) + " m)");
  }
  return best_s;
}

}  // namespace passim
