#include "udn/channel.hpp"

#include <numbers>
#include <string>

#include "udn/error.hpp"

namespace udn {

PathLossModel::PathLossModel(double reference_distance, double exponent)
    : d0_(reference_distance), alpha_(exponent) {
  if (!(d0_ > 0.0) || !std::isfinite(d0_)) {
    throw InvalidParameter("path loss reference distance must be positive");
  }
  if (!(alpha_ > 2.0) || !std::isfinite(alpha_)) {
    throw InvalidParameter("path-loss exponent must exceed 2 (got " + std::to_string(alpha_) +
                           "); for alpha <= 2 the aggregate interference of an infinite "
                           "network is unbounded");
  }
  clamp_gain_ = std::pow(d0_, -alpha_);
}

double path_loss(double distance, const PathLossModel& model) {
  if (!(distance >= 0.0)) throw InvalidParameter("distance must be non-negative");
  return model.gain(distance);
}

LinkFading sample_link_fading(RandomStream& rng) {
  LinkFading f;
  f.gain = rng.exponential();
  f.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return f;
}

std::vector<LinkFading> sample_link_fadings(std::size_t n, RandomStream& rng) {
  std::vector<LinkFading> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_link_fading(rng));
  return out;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double noise_power(double bandwidth_hz, double noise_psd_dbm_hz) {
  if (!(bandwidth_hz > 0.0)) throw InvalidParameter("bandwidth must be positive");
  return dbm_to_watts(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

}  // namespace udn
