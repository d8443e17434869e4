#include "udn/config.hpp"

#include <cmath>

#include "udn/error.hpp"

namespace udn {

double NetworkConfig::noise_over_power() const {
  return noise_power(bandwidth, noise_psd_dbm_hz) / dbm_to_watts(tx_power_dbm);
}

void NetworkConfig::validate() const {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(rap_density)) throw InvalidParameter("RAP density must be non-negative");
  if (!finite_nonneg(user_density)) throw InvalidParameter("user density must be non-negative");
  if (!finite_nonneg(cell_radius)) throw InvalidParameter("cell radius C must be non-negative");
  if (!finite_nonneg(min_separation)) {
    throw InvalidParameter("minimum separation D must be non-negative");
  }
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InvalidParameter("bandwidth must be positive");
  }
  if (!std::isfinite(noise_psd_dbm_hz) || !std::isfinite(tx_power_dbm)) {
    throw InvalidParameter("noise PSD and transmit power must be finite");
  }
}

}  // namespace udn
