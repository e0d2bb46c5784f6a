#pragma once

#include "hetsim/errors.hpp"
#include "hetsim/rng.hpp"

namespace hetsim {

/// Propagation and link parameters. All powers are linear (not dB).
struct ChannelParams {
  double alpha = 4.0;     // path-loss exponent, must exceed 2
  double r0 = 0.0;        // near-field cutoff distance; 0 keeps the law unbounded
  double noise = 0.0;     // noise power N0
  double tx_power = 1.0;  // desired-link transmit power

  void validate() const {
    if (!(alpha > 2.0)) throw ParamError("alpha must exceed 2");
    if (!(r0 >= 0.0)) throw ParamError("r0 must be >= 0");
    if (!(noise >= 0.0)) throw ParamError("noise must be >= 0");
    if (!(tx_power > 0.0)) throw ParamError("tx_power must be > 0");
  }
};

/// max(distance, r0)^(-alpha). Throws SingularGeometryError at distance 0
/// when r0 = 0.
double path_loss(double distance, const ChannelParams& params);

/// Unit-mean exponential fading power (Rayleigh amplitude).
inline double draw_rayleigh_power(Rng& rng) { return rng.exponential(); }

}  // namespace hetsim
