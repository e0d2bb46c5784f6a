#include "hetsim/runner.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace hetsim {

namespace {

// Up to 9 significant digits, locale-independent.
std::string format_number(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
  return std::string(buf, ptr);
}

void append_row(std::string& csv, const std::string& experiment, const std::string& mode,
                const std::string& sweep_param, double sweep_value, const EstimateRecord& rec) {
  csv += experiment;
  csv += ',';
  csv += mode;
  csv += ',';
  csv += sweep_param;
  csv += ',';
  csv += format_number(sweep_value);
  csv += ',';
  csv += format_number(rec.estimate);
  csv += ',';
  csv += format_number(rec.std_error);
  csv += ',';
  csv += std::to_string(rec.reps);
  csv += ',';
  csv += format_number(rec.capped_fraction);
  csv += ',';
  csv += std::to_string(rec.seed);
  csv += '\n';
}

std::vector<CorrelationMode> selected_modes(ModeSelect mode) {
  switch (mode) {
    case ModeSelect::correlated:
      return {CorrelationMode::correlated()};
    case ModeSelect::independent:
      return {CorrelationMode::independent()};
    case ModeSelect::both:
      return {CorrelationMode::correlated(), CorrelationMode::independent()};
  }
  throw ParamError("unknown mode selector");
}

}  // namespace

std::string run(const RunConfig& cfg) {
  std::string csv =
      "experiment,mode,sweep_param,sweep_value,estimate,std_error,reps,capped_fraction,seed\n";

  const bool swept = !cfg.sweep.empty();
  const std::vector<double> sweep_values = swept ? cfg.sweep_values : std::vector<double>{0.0};
  const std::string sweep_param = swept ? cfg.sweep : "none";

  switch (cfg.experiment) {
    case ExperimentKind::coverage: {
      for (double value : sweep_values) {
        const RunConfig point = swept ? apply_sweep_value(cfg, value) : cfg;
        const EstimateRecord rec =
            coverage_probability(build_scenario(point), cfg.threads);
        append_row(csv, "coverage", "na", sweep_param, value, rec);
      }
      break;
    }
    case ExperimentKind::simo: {
      for (double value : sweep_values) {
        const RunConfig point = swept ? apply_sweep_value(cfg, value) : cfg;
        for (CorrelationMode mode : selected_modes(cfg.mode)) {
          const EstimateRecord rec =
              simo_joint_occurrence(build_scenario(point), point.antennas, mode, cfg.threads);
          append_row(csv, "simo", rec.mode, sweep_param, value, rec);
        }
      }
      break;
    }
    case ExperimentKind::delay: {
      // The sweep axis is the ALOHA grid itself; all values run in one pass
      // so every replication reuses its pattern across the grid.
      for (CorrelationMode mode : selected_modes(cfg.mode)) {
        const std::vector<EstimateRecord> recs =
            mean_local_delay(build_scenario(cfg), cfg.sweep_values, mode, cfg.threads);
        for (std::size_t i = 0; i < recs.size(); ++i) {
          append_row(csv, "delay", recs[i].mode, "aloha_p", cfg.sweep_values[i], recs[i]);
        }
      }
      break;
    }
    case ExperimentKind::relay: {
      for (CorrelationMode mode : selected_modes(cfg.mode)) {
        const std::vector<EstimateRecord> recs =
            relay_outage(build_scenario(cfg), cfg.relay_grid, mode, cfg.threads);
        for (std::size_t i = 0; i < recs.size(); ++i) {
          append_row(csv, "relay", recs[i].mode, "relay_pos", cfg.relay_grid[i], recs[i]);
        }
      }
      break;
    }
  }
  return csv;
}

void run_to_output(const RunConfig& cfg) {
  const std::string csv = run(cfg);
  if (cfg.out.empty()) {
    std::cout << csv;
    std::cout.flush();
    return;
  }

  // Write-then-rename: a failed run never leaves a partial file behind.
  namespace fs = std::filesystem;
  const fs::path target(cfg.out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    if (!out) throw std::runtime_error("failed writing output file: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace hetsim
