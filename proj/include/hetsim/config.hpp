#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hetsim/experiments.hpp"

namespace hetsim {

enum class ExperimentKind : std::uint8_t { coverage, simo, delay, relay };
enum class ModeSelect : std::uint8_t { correlated, independent, both };
enum class ModelKind : std::uint8_t {
  ppp,
  inhomogeneous_ppp,
  matern_hardcore,
  matern_cluster,
  thomas_cluster
};

/// Parsed run description. Scenario fields are kept in config form so a
/// sweep can override one of them and rebuild; build_scenario() assembles
/// the ScenarioSpec actually executed.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::coverage;
  ModeSelect mode = ModeSelect::both;

  ModelKind model = ModelKind::ppp;
  double lambda = 0.0;         // ppp intensity; peak intensity for inhomogeneous
  double lambda_parent = 0.0;  // hard-core / cluster parent intensity
  double r_min = 0.0;
  double mu = 0.0;
  double cluster_radius = 0.0;
  double sigma = 0.0;  // Thomas scatter; doubles as the gaussian_bump spread
  std::string intensity_family;  // constant | gaussian_ring | gaussian_bump
  double ring_radius = 0.0;
  double ring_width = 0.0;

  double alpha = 4.0;
  double r0 = 0.0;
  double noise = 0.0;
  double theta = 1.0;
  double d = 1.0;
  double aloha_p = -1.0;  // <0: not set
  int fhma_n = 0;         // 0: not set
  int antennas = 2;
  std::vector<double> relay_grid;
  double window_half = 15.0;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  double delay_cap = 1e6;

  std::string sweep;  // empty: no sweep
  std::vector<double> sweep_values;
  std::string out;      // empty: stdout
  unsigned threads = 0;  // 0: auto
};

/// Parses the line-oriented `key = value` format ('#' starts a comment).
/// Unknown keys, duplicates, malformed values and domain violations are
/// rejected with the offending line number; missing required keys are
/// reported by name.
RunConfig parse_config(std::string_view text);

/// Scenario for one sweep point (cfg with the sweep override already applied).
ScenarioSpec build_scenario(const RunConfig& cfg);

/// Applies `value` to the parameter named by cfg.sweep and revalidates.
RunConfig apply_sweep_value(const RunConfig& cfg, double value);

}  // namespace hetsim
