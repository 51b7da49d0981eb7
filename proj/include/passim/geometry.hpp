#pragma once

#include <vector>

namespace passim {

struct RoutePoint {
  double x = 0.0;
  double y = 0.0;
};

// Simple polyline describing the route centerline. Positions along the route
// are expressed as arc length from the first vertex.
class RoutePolyline {
 public:
  explicit RoutePolyline(std::vector<RoutePoint> points);

  // Arc length of the nearest route point. Throws OffRouteError when the
  // point lies farther than lateral_tol from every segment.
  double project(double x, double y, double lateral_tol = 10.0) const;

  double length() const { return cumulative_.back(); }

 private:
  std::vector<RoutePoint> points_;
  std::vector<double> cumulative_;
};

}  // namespace passim
