#include "hetsim/experiments.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "hetsim/parallel.hpp"

namespace hetsim {

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Sequential reduction over the per-replication statistics; the fill order
// of `values` is fixed by replication index, so the result cannot depend on
// how many workers produced them.
MeanSe summarize(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double conditional_success(const ScenarioSpec& scenario, const TaggedPattern& tagged,
                           Point receiver, double link_distance, const MacSpec& mac) {
  return conditional_success_rayleigh(receiver, link_distance, scenario.theta, tagged.pattern,
                                      tagged.tx_power, mac, scenario.channel);
}

void require_fresh_marks(CorrelationMode mode) {
  if (mode.mac_marks != Share::fresh) {
    throw ParamError("shared MAC marks are not supported; all case studies redraw them");
  }
}

}  // namespace

void ScenarioSpec::validate() const {
  if (tiers.empty()) throw ParamError("at least one tier required");
  if (!(reps >= 1)) throw ParamError("reps must be >= 1");
  if (!(link_distance > 0.0)) throw ParamError("link distance must be > 0");
  if (!(theta > 0.0)) throw ParamError("theta must be > 0");
  if (!window.contains({0.0, 0.0})) throw ParamError("window must contain the origin");
  if (!(delay_cap > 0.0)) throw ParamError("delay cap must be > 0");
  channel.validate();
  mac.validate();
  for (const Tier& tier : tiers) {
    if (!(tier.tx_power > 0.0)) throw ParamError("tier tx_power must be > 0");
  }
}

TaggedPattern compose_tiers(const ScenarioSpec& scenario, std::uint64_t replication,
                            std::uint32_t experiment, std::uint32_t group) {
  scenario.validate();
  TaggedPattern result{{{}, scenario.window}, {}};
  std::vector<PointPattern> samples;
  samples.reserve(scenario.tiers.size());
  for (std::size_t k = 0; k < scenario.tiers.size(); ++k) {
    const std::uint32_t purpose =
        stream_tag::tier_base + group * stream_tag::tier_group_stride + static_cast<std::uint32_t>(k);
    Rng rng(scenario.seed, substream(experiment, purpose, replication));
    samples.push_back(sample(scenario.tiers[k].process, scenario.window, rng));
  }
  result.pattern = superpose(samples);
  result.tx_power.reserve(result.pattern.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    result.tx_power.insert(result.tx_power.end(), samples[k].size(),
                           scenario.tiers[k].tx_power);
  }
  return result;
}

EstimateRecord coverage_probability(const ScenarioSpec& scenario, unsigned threads) {
  scenario.validate();
  std::vector<double> stat(scenario.reps);
  parallel_for(scenario.reps, threads, [&](std::uint64_t rep) {
    const TaggedPattern tagged = compose_tiers(scenario, rep, stream_tag::coverage);
    stat[rep] = conditional_success(scenario, tagged, {0.0, 0.0}, scenario.link_distance,
                                    scenario.mac);
  });
  const MeanSe s = summarize(stat);

  EstimateRecord record;
  record.experiment = "coverage";
  record.mode = "na";
  record.params = {{"theta", scenario.theta}, {"d", scenario.link_distance}};
  record.estimate = s.mean;
  record.std_error = s.se;
  record.reps = scenario.reps;
  record.seed = scenario.seed;
  return record;
}

EstimateRecord simo_joint_occurrence(const ScenarioSpec& scenario, int antennas,
                                     CorrelationMode mode, unsigned threads) {
  scenario.validate();
  require_fresh_marks(mode);
  if (antennas < 1) throw ParamError("antenna count must be >= 1");

  // The antennas are co-located at the origin, so one pattern fixes the same
  // interferer distances for all of them and only fading differs.
  std::vector<double> success(scenario.reps);
  parallel_for(scenario.reps, threads, [&](std::uint64_t rep) {
    const TaggedPattern tagged = compose_tiers(scenario, rep, stream_tag::simo);
    success[rep] = conditional_success(scenario, tagged, {0.0, 0.0}, scenario.link_distance,
                                       scenario.mac);
  });

  EstimateRecord record;
  record.experiment = "simo";
  record.params = {{"antennas", static_cast<double>(antennas)},
                   {"theta", scenario.theta},
                   {"d", scenario.link_distance}};
  record.reps = scenario.reps;
  record.seed = scenario.seed;

  if (mode.positions == Share::shared) {
    // All antennas succeed iff each of the M independent fading draws beats
    // theta, which is p_s(pattern)^M.
    std::vector<double> joint(scenario.reps);
    for (std::uint64_t rep = 0; rep < scenario.reps; ++rep) {
      joint[rep] = std::pow(success[rep], antennas);
    }
    const MeanSe s = summarize(joint);
    record.mode = "correlated";
    record.estimate = s.mean;
    record.std_error = s.se;
  } else {
    // Independent interferer fields per antenna: the joint probability is
    // coverage^M; the delta method propagates the coverage uncertainty.
    const MeanSe s = summarize(success);
    record.mode = "independent";
    record.estimate = std::pow(s.mean, antennas);
    record.std_error =
        antennas * std::pow(s.mean, antennas - 1) * s.se;
  }
  return record;
}

std::vector<EstimateRecord> mean_local_delay(const ScenarioSpec& scenario,
                                             std::span<const double> p_grid,
                                             CorrelationMode mode, unsigned threads) {
  scenario.validate();
  require_fresh_marks(mode);
  if (p_grid.empty()) throw ParamError("empty transmit-probability grid");
  for (double p : p_grid) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw ParamError("aloha transmit probability must be in (0, 1]; p = 0 never succeeds");
    }
  }

  // One pattern per replication serves the whole grid: the conditional
  // success is monotone in p given the pattern, so the estimates inherit
  // exact monotonicity instead of relying on independent noise.
  const std::size_t np = p_grid.size();
  std::vector<std::vector<double>> success(np, std::vector<double>(scenario.reps));
  parallel_for(scenario.reps, threads, [&](std::uint64_t rep) {
    const TaggedPattern tagged = compose_tiers(scenario, rep, stream_tag::delay);
    for (std::size_t j = 0; j < np; ++j) {
      success[j][rep] = conditional_success(scenario, tagged, {0.0, 0.0},
                                            scenario.link_distance, MacSpec::make_aloha(p_grid[j]));
    }
  });

  std::vector<EstimateRecord> records;
  records.reserve(np);
  for (std::size_t j = 0; j < np; ++j) {
    EstimateRecord record;
    record.experiment = "delay";
    record.params = {{"aloha_p", p_grid[j]},
                     {"theta", scenario.theta},
                     {"d", scenario.link_distance}};
    record.reps = scenario.reps;
    record.seed = scenario.seed;

    if (mode.positions == Share::shared) {
      // Static geometry: slots see the same pattern, so the slot count is
      // geometric with success p_s and the conditional mean delay is 1/p_s.
      // Heavy tails are capped and the capped share reported.
      std::uint64_t capped = 0;
      std::vector<double> delay(scenario.reps);
      for (std::uint64_t rep = 0; rep < scenario.reps; ++rep) {
        const double raw = 1.0 / success[j][rep];
        if (raw >= scenario.delay_cap || !std::isfinite(raw)) {
          delay[rep] = scenario.delay_cap;
          ++capped;
        } else {
          delay[rep] = raw;
        }
      }
      const MeanSe s = summarize(delay);
      record.mode = "correlated";
      record.estimate = s.mean;
      record.std_error = s.se;
      record.capped_fraction = static_cast<double>(capped) / static_cast<double>(scenario.reps);
    } else {
      // Decorrelated baseline: geometry refreshes every slot, giving the
      // geometric mean delay 1/E[p_s].
      const MeanSe s = summarize(success[j]);
      record.mode = "independent";
      record.estimate = 1.0 / s.mean;
      record.std_error = s.se / (s.mean * s.mean);
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<EstimateRecord> relay_outage(const ScenarioSpec& scenario,
                                         std::span<const double> relay_positions,
                                         CorrelationMode mode, unsigned threads) {
  scenario.validate();
  require_fresh_marks(mode);
  if (relay_positions.empty()) throw ParamError("empty relay position grid");
  for (double r : relay_positions) {
    if (!(r > -1.0 && r < 1.0)) {
      throw ParamError("relay position must lie strictly inside (-1, 1)");
    }
  }

  constexpr Point kSource{-1.0, 0.0};
  constexpr Point kDest{1.0, 0.0};
  const bool shared_positions = mode.positions == Share::shared;
  const std::size_t nr = relay_positions.size();

  // Per (replication, relay position): end-to-end outage given the
  // pattern(s). Links are conditionally independent given the geometry
  // because fading and MAC marks are fresh per link and slot.
  std::vector<std::vector<double>> outage(nr, std::vector<double>(scenario.reps));
  parallel_for(scenario.reps, threads, [&](std::uint64_t rep) {
    const TaggedPattern shared = compose_tiers(scenario, rep, stream_tag::relay, 0);
    std::optional<TaggedPattern> fresh_relay, fresh_dest2;
    if (!shared_positions) {
      fresh_relay = compose_tiers(scenario, rep, stream_tag::relay, 1);
      fresh_dest2 = compose_tiers(scenario, rep, stream_tag::relay, 2);
    }
    const TaggedPattern& for_relay = shared_positions ? shared : *fresh_relay;
    const TaggedPattern& for_dest2 = shared_positions ? shared : *fresh_dest2;

    const double dest_slot1 =
        conditional_success(scenario, shared, kDest, distance(kSource, kDest), scenario.mac);
    for (std::size_t j = 0; j < nr; ++j) {
      const Point relay{relay_positions[j], 0.0};
      const double relay_slot1 =
          conditional_success(scenario, for_relay, relay, distance(kSource, relay), scenario.mac);
      const double dest_slot2 =
          conditional_success(scenario, for_dest2, kDest, distance(relay, kDest), scenario.mac);
      const double success = dest_slot1 + (1.0 - dest_slot1) * relay_slot1 * dest_slot2;
      outage[j][rep] = 1.0 - success;
    }
  });

  std::vector<EstimateRecord> records;
  records.reserve(nr);
  for (std::size_t j = 0; j < nr; ++j) {
    const MeanSe s = summarize(outage[j]);
    EstimateRecord record;
    record.experiment = "relay";
    record.mode = shared_positions ? "correlated" : "independent";
    record.params = {{"relay_pos", relay_positions[j]}, {"theta", scenario.theta}};
    record.estimate = s.mean;
    record.std_error = s.se;
    record.reps = scenario.reps;
    record.seed = scenario.seed;
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace hetsim
