#pragma once

#include <span>
#include <variant>
#include <vector>

#include "hetsim/geometry.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {

// ---------------------------------------------------------------------------
// Process specifications
// ---------------------------------------------------------------------------

struct HomogeneousPpp {
  double lambda = 0.0;  // points per unit area
};

/// Location-dependent intensity families. Each has a finite supremum on any
/// window, so inhomogeneous sampling can use dominating-PPP thinning.
struct ConstantIntensity {
  double lambda0 = 0.0;
};
struct GaussianRing {
  double lambda0 = 0.0;  // peak intensity on the ring
  double radius = 0.0;   // ring radius
  double width = 1.0;    // radial standard deviation
};
struct GaussianBump {
  double lambda0 = 0.0;  // peak intensity at the center
  Point center;
  double spread = 1.0;  // standard deviation
};
using IntensityFamily = std::variant<ConstantIntensity, GaussianRing, GaussianBump>;

struct InhomogeneousPpp {
  IntensityFamily family = ConstantIntensity{};
};

/// Matern hard-core process of type II: parents carry i.i.d. uniform marks
/// and a parent survives iff no other parent within min_distance has a
/// strictly smaller mark.
struct MaternHardCore {
  double parent_lambda = 0.0;
  double min_distance = 0.0;
};

struct MaternCluster {
  double parent_lambda = 0.0;
  double mean_daughters = 0.0;  // Poisson mean per parent
  double radius = 0.0;          // daughters uniform in a disk of this radius
};

struct ThomasCluster {
  double parent_lambda = 0.0;
  double mean_daughters = 0.0;
  double sigma = 0.0;  // isotropic Gaussian scatter std-dev
};

using ProcessSpec =
    std::variant<HomogeneousPpp, InhomogeneousPpp, MaternHardCore, MaternCluster, ThomasCluster>;

// ---------------------------------------------------------------------------
// Intensity helpers
// ---------------------------------------------------------------------------

double intensity_at(const IntensityFamily& family, Point p);
/// Supremum of the intensity over the window (exact for the built-in families).
double intensity_sup(const IntensityFamily& family, const Window& window);

/// Retained intensity of a type-II hard-core process:
/// (1 - exp(-lambda_p * pi * r^2)) / (pi * r^2).
double matern2_retained_intensity(double parent_lambda, double min_distance);

/// Parent intensity whose type-II retained intensity equals target_lambda.
/// Requires target_lambda * pi * r^2 < 1 (retention cannot exceed 1/(pi r^2)).
double matern2_parent_intensity(double target_lambda, double min_distance);

// ---------------------------------------------------------------------------
// Samplers. Pure functions of (spec, window, rng stream); samplers may be
// called concurrently as long as each call owns its Rng.
// ---------------------------------------------------------------------------

PointPattern sample_ppp(double lambda, const Window& window, Rng& rng);

PointPattern sample_inhomogeneous_ppp(const InhomogeneousPpp& spec, const Window& window,
                                      Rng& rng);

/// Parents are drawn on the window dilated by min_distance so that retention
/// of every point inside the window sees its full neighborhood; the returned
/// pattern is clipped back to the window and has pairwise distances
/// >= min_distance.
PointPattern sample_matern_hardcore(const MaternHardCore& spec, const Window& window, Rng& rng);

/// Cluster processes sample parents on a dilated window (by the disk radius,
/// resp. 4 sigma) so the daughter intensity is unbiased inside the window;
/// daughters falling outside the window are dropped.
PointPattern sample_cluster(const MaternCluster& spec, const Window& window, Rng& rng);
PointPattern sample_cluster(const ThomasCluster& spec, const Window& window, Rng& rng);

PointPattern sample(const ProcessSpec& spec, const Window& window, Rng& rng);

/// Mark-based type-II retention rule, exposed for direct checking: keep[i]
/// iff no j != i with distance(points[i], points[j]) < min_distance and
/// marks[j] < marks[i].
std::vector<char> hardcore_retention(std::span<const Point> points,
                                     std::span<const double> marks, double min_distance);

/// Concatenates patterns over one common window. The result depends on the
/// argument order only through point order, which no statistic may use.
PointPattern superpose(std::span<const PointPattern> patterns);

/// Independent thinning: each point kept with probability q.
PointPattern thin(const PointPattern& pattern, double q, Rng& rng);

}  // namespace hetsim
