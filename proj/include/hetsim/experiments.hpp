#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hetsim/interference.hpp"
#include "hetsim/point_process.hpp"

namespace hetsim {

struct Tier {
  ProcessSpec process;
  double tx_power = 1.0;
};

/// Everything one replication needs. The receiver of interest sits at the
/// origin; the desired transmitter is placed explicitly at link_distance and
/// is never part of the interferer pattern.
struct ScenarioSpec {
  std::vector<Tier> tiers;
  Window window = Window::centered_square(15.0);
  ChannelParams channel;
  MacSpec mac;
  double theta = 1.0;          // SIR threshold, linear
  double link_distance = 1.0;  // desired-link length d
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  double delay_cap = 1e6;  // per-replication cap on 1/p_s (slots)

  void validate() const;
};

/// Which randomness is shared across antennas/slots/receivers within one
/// replication. Fading is always fresh per (antenna, slot, link). The
/// closed-form evaluators require fresh MAC marks; mac_marks = shared is
/// rejected by the experiments.
enum class Share : std::uint8_t { shared, fresh };
struct CorrelationMode {
  Share positions = Share::shared;
  Share mac_marks = Share::fresh;

  static CorrelationMode correlated() { return {Share::shared, Share::fresh}; }
  static CorrelationMode independent() { return {Share::fresh, Share::fresh}; }
};

/// One output row of an experiment.
struct EstimateRecord {
  std::string experiment;
  std::string mode;  // "correlated", "independent", or "na"
  std::vector<std::pair<std::string, double>> params;
  double estimate = 0.0;
  double std_error = 0.0;       // sample std-dev of the per-replication statistic / sqrt(reps)
  double capped_fraction = 0.0; // fraction of replications hitting delay_cap (delay only)
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

/// Interferer pattern with one transmit power per point.
struct TaggedPattern {
  PointPattern pattern;
  std::vector<double> tx_power;
};

/// Substream tags; part of the reproducibility contract.
namespace stream_tag {
inline constexpr std::uint32_t adhoc = 0;
inline constexpr std::uint32_t coverage = 1;
inline constexpr std::uint32_t simo = 2;
inline constexpr std::uint32_t delay = 3;
inline constexpr std::uint32_t relay = 4;
// Purposes 0..199 select the tier (plus 50 per extra pattern draw of one
// replication); 200+ are free for MAC/fading consumers such as test oracles.
inline constexpr std::uint32_t tier_base = 0;
inline constexpr std::uint32_t tier_group_stride = 50;
inline constexpr std::uint32_t mac = 200;
inline constexpr std::uint32_t fading = 201;
}  // namespace stream_tag

/// Samples every tier independently and superposes, tagging each point with
/// its tier's transmit power. `group` selects one of the independent pattern
/// draws of a replication (experiments that resample positions per
/// antenna/slot/receiver use group = 0, 1, ...).
TaggedPattern compose_tiers(const ScenarioSpec& scenario, std::uint64_t replication = 0,
                            std::uint32_t experiment = stream_tag::adhoc,
                            std::uint32_t group = 0);

/// E over patterns of the conditional success probability p_s; the MAC and
/// fading average is exact per replication.
EstimateRecord coverage_probability(const ScenarioSpec& scenario, unsigned threads = 1);

/// P(all M co-located antennas above theta).
/// correlated: one pattern per replication shared by the antennas, fading
/// independent per antenna -> per-replication statistic p_s^M.
/// independent: defined as coverage^M; std_error by the delta method.
EstimateRecord simo_joint_occurrence(const ScenarioSpec& scenario, int antennas,
                                     CorrelationMode mode, unsigned threads = 1);

/// Mean number of slots until first success; desired link transmits every
/// slot, interferers run aloha(p) per slot. correlated (static geometry):
/// E over patterns of min(1/p_s, delay_cap); independent: the decorrelated
/// baseline 1/E[p_s]. One pattern per replication is reused across the whole
/// p grid, so per-replication delays are exactly monotone in p.
std::vector<EstimateRecord> mean_local_delay(const ScenarioSpec& scenario,
                                             std::span<const double> p_grid, CorrelationMode mode,
                                             unsigned threads = 1);

/// Two-slot decode-and-forward with selection combining. Source at (-1,0),
/// destination at (1,0), relay swept over (R,0) for R in relay_positions,
/// all strictly inside (-1,1). Slot 1: source transmits, relay and
/// destination listen; slot 2: relay forwards iff it decoded. End-to-end
/// success = dest decodes slot 1 OR (relay decoded AND dest decodes slot 2);
/// the record reports the outage probability. MAC marks and fading are fresh
/// per link and slot, so the three link successes are conditionally
/// independent given the pattern(s). correlated: one pattern per replication
/// shared by both slots and receivers; independent: a fresh pattern per
/// (receiver, slot).
std::vector<EstimateRecord> relay_outage(const ScenarioSpec& scenario,
                                         std::span<const double> relay_positions,
                                         CorrelationMode mode, unsigned threads = 1);

}  // namespace hetsim
