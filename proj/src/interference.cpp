#include "hetsim/interference.hpp"

#include <cmath>
#include <limits>

namespace hetsim {

double MacSpec::activity_probability() const {
  switch (scheme) {
    case Scheme::always_on:
      return 1.0;
    case Scheme::aloha:
      return p;
    case Scheme::fhma:
      return 1.0 / static_cast<double>(subbands);
  }
  throw ParamError("unknown MAC scheme");
}

void MacSpec::validate() const {
  if (scheme == Scheme::aloha && !(p >= 0.0 && p <= 1.0)) {
    throw ParamError("aloha transmit probability must be in [0, 1]");
  }
  if (scheme == Scheme::fhma && subbands < 1) {
    throw ParamError("fhma sub-band count must be >= 1");
  }
}

std::vector<std::uint8_t> mac_activity(const PointPattern& pattern, const MacSpec& mac,
                                       Rng& rng) {
  mac.validate();
  std::vector<std::uint8_t> active(pattern.size(), 1);
  switch (mac.scheme) {
    case MacSpec::Scheme::always_on:
      break;
    case MacSpec::Scheme::aloha:
      for (auto& a : active) a = rng.bernoulli(mac.p) ? 1 : 0;
      break;
    case MacSpec::Scheme::fhma:
      // The receiver listens on band 0; an interferer hits it iff its
      // uniformly chosen band is 0 as well.
      for (auto& a : active) {
        a = rng.uniform_below(static_cast<std::uint64_t>(mac.subbands)) == 0 ? 1 : 0;
      }
      break;
  }
  return active;
}

double aggregate_interference(Point receiver, const PointPattern& pattern,
                              std::span<const std::uint8_t> active, std::span<const double> fading,
                              std::span<const double> tx_power, const ChannelParams& params) {
  params.validate();
  if (active.size() != pattern.size() || fading.size() != pattern.size() ||
      tx_power.size() != pattern.size()) {
    throw ParamError("mask, fading and power spans must match the point count");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!active[i]) continue;
    total += tx_power[i] * fading[i] * path_loss(distance(pattern.points[i], receiver), params);
  }
  return total;
}

namespace {

double ratio_or_special(double signal, double denom) {
  if (denom > 0.0) return signal / denom;
  if (signal > 0.0) return std::numeric_limits<double>::infinity();
  throw ParamError("SIR of 0/0 is undefined");
}

}  // namespace

double sir(Point receiver, Point tx, double tx_fading, double interference,
           const ChannelParams& params) {
  const double signal = params.tx_power * tx_fading * path_loss(distance(tx, receiver), params);
  return ratio_or_special(signal, interference);
}

double sinr(Point receiver, Point tx, double tx_fading, double interference,
            const ChannelParams& params) {
  const double signal = params.tx_power * tx_fading * path_loss(distance(tx, receiver), params);
  return ratio_or_special(signal, interference + params.noise);
}

double conditional_success_rayleigh(Point receiver, double link_distance, double theta,
                                    const PointPattern& pattern,
                                    std::span<const double> tx_power, const MacSpec& mac,
                                    const ChannelParams& params) {
  params.validate();
  mac.validate();
  if (!(theta > 0.0)) throw ParamError("theta must be > 0");
  if (!tx_power.empty() && tx_power.size() != pattern.size()) {
    throw ParamError("one power per interferer required");
  }

  const double activity = mac.activity_probability();
  const double link_gain = path_loss(link_distance, params);

  // Desired fading is exponential, so the noise term factors out and each
  // interferer contributes an independent MAC/fading average.
  double success = std::exp(-theta * params.noise / (params.tx_power * link_gain));
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const double power = tx_power.empty() ? params.tx_power : tx_power[i];
    const double gain = path_loss(distance(pattern.points[i], receiver), params);
    const double strength = theta * (power / params.tx_power) * (gain / link_gain);
    success *= 1.0 - activity + activity / (1.0 + strength);
  }
  return success;
}

double conditional_success_rayleigh(double link_distance, double theta,
                                    const PointPattern& pattern, const MacSpec& mac,
                                    const ChannelParams& params) {
  return conditional_success_rayleigh(Point{0.0, 0.0}, link_distance, theta, pattern, {}, mac,
                                      params);
}

}  // namespace hetsim
