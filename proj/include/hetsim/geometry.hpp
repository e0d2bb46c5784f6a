#pragma once

#include <cmath>
#include <vector>

#include "hetsim/errors.hpp"

namespace hetsim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

/// Axis-aligned rectangular sampling region.
class Window {
 public:
  Window(double x_min, double x_max, double y_min, double y_max)
      : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
    if (!(x_min < x_max) || !(y_min < y_max)) {
      throw ParamError("window requires x_min < x_max and y_min < y_max");
    }
  }

  /// Square window [-half, half]^2 centered at the origin.
  static Window centered_square(double half) { return Window(-half, half, -half, half); }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  double width() const { return x_max_ - x_min_; }
  double height() const { return y_max_ - y_min_; }
  double area() const { return width() * height(); }

  bool contains(Point p) const {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
  }

  /// The window grown by `margin` on every side.
  Window dilated(double margin) const {
    return Window(x_min_ - margin, x_max_ + margin, y_min_ - margin, y_max_ + margin);
  }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double x_min_, x_max_, y_min_, y_max_;
};

/// A finite planar point set inside a window. Point order follows the
/// generation order of the sampler that produced it; consumers must not
/// attach meaning to the order beyond reproducibility.
struct PointPattern {
  std::vector<Point> points;
  Window window;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Smallest pairwise distance, +inf for patterns with fewer than two points.
double min_pairwise_distance(const PointPattern& pattern);

}  // namespace hetsim
