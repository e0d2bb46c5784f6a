#include "hetsim/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hetsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_nonnegative(double value, const char* name) {
  if (!(value >= 0.0)) throw ParamError(std::string(name) + " must be >= 0");
}

// Uniform grid over the pattern's bounding box. Cells are at least `radius`
// wide, so all candidates within `radius` of a point live in its 3x3 block;
// the floor on the cell size keeps the grid bounded for tiny radii.
class NeighborGrid {
 public:
  NeighborGrid(std::span<const Point> points, double radius) : points_(points) {
    if (points.empty()) return;
    x0_ = points[0].x;
    y0_ = points[0].y;
    double x1 = points[0].x, y1 = points[0].y;
    for (const Point& p : points) {
      x0_ = std::min(x0_, p.x);
      y0_ = std::min(y0_, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    cell_ = std::max(radius, std::max(x1 - x0_, y1 - y0_) / 1024.0);
    if (cell_ <= 0.0) cell_ = 1.0;
    nx_ = 1;
    ny_ = 1;
    for (const Point& p : points) {
      nx_ = std::max(nx_, cell_index_x(p.x) + 1);
      ny_ = std::max(ny_, cell_index_y(p.y) + 1);
    }
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::size_t i = 0; i < points.size(); ++i) {
      cells_[cell_of(points[i])].push_back(i);
    }
  }

  template <typename Visitor>
  void visit_candidates(Point p, Visitor&& visit) const {
    const std::int64_t cx = cell_index_x(p.x);
    const std::int64_t cy = cell_index_y(p.y);
    for (std::int64_t gx = std::max<std::int64_t>(cx - 1, 0);
         gx <= std::min<std::int64_t>(cx + 1, nx_ - 1); ++gx) {
      for (std::int64_t gy = std::max<std::int64_t>(cy - 1, 0);
           gy <= std::min<std::int64_t>(cy + 1, ny_ - 1); ++gy) {
        for (std::size_t j : cells_[static_cast<std::size_t>(gx) * ny_ + gy]) {
          visit(j);
        }
      }
    }
  }

 private:
  std::int64_t cell_index_x(double x) const {
    return static_cast<std::int64_t>(std::floor((x - x0_) / cell_));
  }
  std::int64_t cell_index_y(double y) const {
    return static_cast<std::int64_t>(std::floor((y - y0_) / cell_));
  }
  std::size_t cell_of(Point p) const {
    return static_cast<std::size_t>(cell_index_x(p.x)) * ny_ + cell_index_y(p.y);
  }

  std::span<const Point> points_;
  double cell_ = 1.0;
  double x0_ = 0.0, y0_ = 0.0;
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace

double min_pairwise_distance(const PointPattern& pattern) {
  const auto& pts = pattern.points;
  if (pts.size() < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, squared_distance(pts[i], pts[j]));
    }
  }
  return std::sqrt(best);
}

double intensity_at(const IntensityFamily& family, Point p) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantIntensity>) {
          return f.lambda0;
        } else if constexpr (std::is_same_v<T, GaussianRing>) {
          const double r = std::sqrt(p.x * p.x + p.y * p.y);
          const double dr = (r - f.radius) / f.width;
          return f.lambda0 * std::exp(-0.5 * dr * dr);
        } else {
          const double dx = (p.x - f.center.x) / f.spread;
          const double dy = (p.y - f.center.y) / f.spread;
          return f.lambda0 * std::exp(-0.5 * (dx * dx + dy * dy));
        }
      },
      family);
}

double intensity_sup(const IntensityFamily& family, const Window&) {
  // Every built-in family peaks at lambda0 (attained on the ring / at the
  // bump center / everywhere), which dominates any window.
  return std::visit(
      [](const auto& f) -> double {
        if (!(f.lambda0 >= 0.0)) throw ParamError("lambda0 must be >= 0");
        return f.lambda0;
      },
      family);
}

double matern2_retained_intensity(double parent_lambda, double min_distance) {
  check_nonnegative(parent_lambda, "parent_lambda");
  check_nonnegative(min_distance, "min_distance");
  const double ball = kPi * min_distance * min_distance;
  if (ball == 0.0 || parent_lambda == 0.0) return parent_lambda;
  return -std::expm1(-parent_lambda * ball) / ball;
}

double matern2_parent_intensity(double target_lambda, double min_distance) {
  check_nonnegative(target_lambda, "target_lambda");
  check_nonnegative(min_distance, "min_distance");
  const double ball = kPi * min_distance * min_distance;
  if (ball == 0.0 || target_lambda == 0.0) return target_lambda;
  if (!(target_lambda * ball < 1.0)) {
    throw ParamError("target intensity exceeds the type-II saturation 1/(pi r^2)");
  }
  return -std::log1p(-target_lambda * ball) / ball;
}

PointPattern sample_ppp(double lambda, const Window& window, Rng& rng) {
  check_nonnegative(lambda, "lambda");
  const std::uint64_t count = rng.poisson(lambda * window.area());
  PointPattern pattern{{}, window};
  pattern.points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double x = rng.uniform(window.x_min(), window.x_max());
    const double y = rng.uniform(window.y_min(), window.y_max());
    pattern.points.push_back({x, y});
  }
  return pattern;
}

PointPattern sample_inhomogeneous_ppp(const InhomogeneousPpp& spec, const Window& window,
                                      Rng& rng) {
  const double lambda_max = intensity_sup(spec.family, window);
  if (!std::isfinite(lambda_max)) throw ParamError("intensity has no finite supremum");

  // Dominating PPP(lambda_max) thinned with retention lambda(x)/lambda_max.
  PointPattern dominating = sample_ppp(lambda_max, window, rng);
  PointPattern pattern{{}, window};
  pattern.points.reserve(dominating.size());
  for (const Point& p : dominating.points) {
    const double keep = intensity_at(spec.family, p) / lambda_max;
    if (rng.uniform() < keep) pattern.points.push_back(p);
  }
  return pattern;
}

std::vector<char> hardcore_retention(std::span<const Point> points,
                                     std::span<const double> marks, double min_distance) {
  if (points.size() != marks.size()) throw ParamError("one mark per point required");
  check_nonnegative(min_distance, "min_distance");
  std::vector<char> keep(points.size(), 1);
  if (min_distance == 0.0 || points.size() < 2) return keep;

  const NeighborGrid grid(points, min_distance);
  const double limit = min_distance * min_distance;
  for (std::size_t i = 0; i < points.size(); ++i) {
    grid.visit_candidates(points[i], [&](std::size_t j) {
      if (j == i || !keep[i]) return;
      if (marks[j] < marks[i] && squared_distance(points[i], points[j]) < limit) {
        keep[i] = 0;
      }
    });
  }
  return keep;
}

PointPattern sample_matern_hardcore(const MaternHardCore& spec, const Window& window, Rng& rng) {
  check_nonnegative(spec.parent_lambda, "parent_lambda");
  check_nonnegative(spec.min_distance, "min_distance");

  // Parents live on the dilated window so every in-window point competes
  // against its complete min_distance neighborhood.
  const Window parent_window =
      spec.min_distance > 0.0 ? window.dilated(spec.min_distance) : window;
  const PointPattern parents = sample_ppp(spec.parent_lambda, parent_window, rng);
  std::vector<double> marks(parents.size());
  for (double& m : marks) m = rng.uniform();

  const std::vector<char> keep = hardcore_retention(parents.points, marks, spec.min_distance);
  PointPattern pattern{{}, window};
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (keep[i] && window.contains(parents.points[i])) {
      pattern.points.push_back(parents.points[i]);
    }
  }
  return pattern;
}

PointPattern sample_cluster(const MaternCluster& spec, const Window& window, Rng& rng) {
  check_nonnegative(spec.parent_lambda, "parent_lambda");
  check_nonnegative(spec.mean_daughters, "mean_daughters");
  check_nonnegative(spec.radius, "radius");

  const Window parent_window = spec.radius > 0.0 ? window.dilated(spec.radius) : window;
  const PointPattern parents = sample_ppp(spec.parent_lambda, parent_window, rng);
  PointPattern pattern{{}, window};
  for (const Point& parent : parents.points) {
    const std::uint64_t daughters = rng.poisson(spec.mean_daughters);
    for (std::uint64_t k = 0; k < daughters; ++k) {
      // Uniform in the disk: radius via sqrt, angle uniform.
      const double r = spec.radius * std::sqrt(rng.uniform());
      const double phi = 2.0 * kPi * rng.uniform();
      const Point p{parent.x + r * std::cos(phi), parent.y + r * std::sin(phi)};
      if (window.contains(p)) pattern.points.push_back(p);
    }
  }
  return pattern;
}

PointPattern sample_cluster(const ThomasCluster& spec, const Window& window, Rng& rng) {
  check_nonnegative(spec.parent_lambda, "parent_lambda");
  check_nonnegative(spec.mean_daughters, "mean_daughters");
  check_nonnegative(spec.sigma, "sigma");

  // 4 sigma covers all but ~6e-5 of the scatter mass.
  const Window parent_window = spec.sigma > 0.0 ? window.dilated(4.0 * spec.sigma) : window;
  const PointPattern parents = sample_ppp(spec.parent_lambda, parent_window, rng);
  PointPattern pattern{{}, window};
  for (const Point& parent : parents.points) {
    const std::uint64_t daughters = rng.poisson(spec.mean_daughters);
    for (std::uint64_t k = 0; k < daughters; ++k) {
      double dx, dy;
      rng.normal_pair(dx, dy);
      const Point p{parent.x + spec.sigma * dx, parent.y + spec.sigma * dy};
      if (window.contains(p)) pattern.points.push_back(p);
    }
  }
  return pattern;
}

PointPattern sample(const ProcessSpec& spec, const Window& window, Rng& rng) {
  return std::visit(
      [&](const auto& s) -> PointPattern {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HomogeneousPpp>) {
          return sample_ppp(s.lambda, window, rng);
        } else if constexpr (std::is_same_v<T, InhomogeneousPpp>) {
          return sample_inhomogeneous_ppp(s, window, rng);
        } else if constexpr (std::is_same_v<T, MaternHardCore>) {
          return sample_matern_hardcore(s, window, rng);
        } else {
          return sample_cluster(s, window, rng);
        }
      },
      spec);
}

PointPattern superpose(std::span<const PointPattern> patterns) {
  if (patterns.empty()) throw ParamError("superpose requires at least one pattern");
  PointPattern result{{}, patterns.front().window};
  std::size_t total = 0;
  for (const PointPattern& p : patterns) {
    if (!(p.window == result.window)) throw ParamError("superpose requires identical windows");
    total += p.size();
  }
  result.points.reserve(total);
  for (const PointPattern& p : patterns) {
    result.points.insert(result.points.end(), p.points.begin(), p.points.end());
  }
  return result;
}

PointPattern thin(const PointPattern& pattern, double q, Rng& rng) {
  if (!(q >= 0.0 && q <= 1.0)) throw ParamError("retention probability must be in [0, 1]");
  PointPattern result{{}, pattern.window};
  result.points.reserve(pattern.size());
  for (const Point& p : pattern.points) {
    if (rng.uniform() < q) result.points.push_back(p);
  }
  return result;
}

}  // namespace hetsim
