#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hetsim/channel.hpp"
#include "hetsim/geometry.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {

/// Random medium access of the interfering nodes.
/// always_on: every node transmits every slot.
/// aloha(p):  each node transmits independently with probability p.
/// fhma(N):   each node picks one of N sub-bands uniformly per slot and
///            interferes iff it lands on the receiver's band (band 0),
///            i.e. Bernoulli(1/N).
struct MacSpec {
  enum class Scheme : std::uint8_t { always_on, aloha, fhma };

  Scheme scheme = Scheme::always_on;
  double p = 1.0;
  int subbands = 1;

  static MacSpec make_always_on() { return {}; }
  static MacSpec make_aloha(double p) { return {Scheme::aloha, p, 1}; }
  static MacSpec make_fhma(int n) { return {Scheme::fhma, 1.0, n}; }

  /// Per-slot activity probability of one interferer: 1, p, or 1/N.
  double activity_probability() const;

  void validate() const;
};

/// One activity mark per point of the pattern, drawn in point order.
std::vector<std::uint8_t> mac_activity(const PointPattern& pattern, const MacSpec& mac, Rng& rng);

/// Shot-noise sum over the active points:
///   sum_x tx_power[x] * fading[x] * path_loss(|x - receiver|).
/// fading and tx_power must have one entry per point; a mask entry of zero
/// removes the point from the sum. Propagates SingularGeometryError when an
/// active point coincides with the receiver and r0 = 0.
double aggregate_interference(Point receiver, const PointPattern& pattern,
                              std::span<const std::uint8_t> active, std::span<const double> fading,
                              std::span<const double> tx_power, const ChannelParams& params);

/// (tx_power * tx_fading * path_loss(|tx - receiver|)) / (interference + extra_noise).
/// sir() uses zero noise, sinr() adds params.noise. A positive signal over a
/// zero denominator returns +infinity; 0/0 throws ParamError.
double sir(Point receiver, Point tx, double tx_fading, double interference,
           const ChannelParams& params);
double sinr(Point receiver, Point tx, double tx_fading, double interference,
            const ChannelParams& params);

/// Success probability of a link of length `link_distance` ending at
/// `receiver`, averaged over Rayleigh fading and MAC activity with the
/// interferer pattern held fixed:
///
///   exp(-theta * N0 * max(d,r0)^alpha / P)
///     * prod_x [ 1 - p_x + p_x / (1 + theta * (P_x/P) * L(x) ) ]
///
/// where p_x is the activity probability, P_x the interferer transmit power
/// (tx_power[x], or params.tx_power for all x when the span is empty), and
/// L(x) = path_loss(|x - receiver|) / path_loss(d) with the clamped law used
/// on both ends.
double conditional_success_rayleigh(Point receiver, double link_distance, double theta,
                                    const PointPattern& pattern,
                                    std::span<const double> tx_power, const MacSpec& mac,
                                    const ChannelParams& params);

/// Receiver at the origin.
double conditional_success_rayleigh(double link_distance, double theta,
                                    const PointPattern& pattern, const MacSpec& mac,
                                    const ChannelParams& params);

}  // namespace hetsim
