#include "hetsim/channel.hpp"

#include <cmath>

namespace hetsim {

double path_loss(double distance, const ChannelParams& params) {
  params.validate();
  if (!(distance >= 0.0)) throw ParamError("distance must be >= 0");
  const double effective = std::max(distance, params.r0);
  if (effective == 0.0) {
    throw SingularGeometryError("path loss at zero distance with r0 = 0");
  }
  return std::pow(effective, -params.alpha);
}

}  // namespace hetsim
