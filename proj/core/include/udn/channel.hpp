#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "udn/rng.hpp"

namespace udn {

/// Bounded power-law path loss, gain = max(d, d0)^-alpha.
class PathLossModel {
 public:
  /// Throws InvalidParameter unless d0 > 0 and alpha > 2.
  PathLossModel(double reference_distance, double exponent);

  [[nodiscard]] double reference_distance() const noexcept { return d0_; }
  [[nodiscard]] double exponent() const noexcept { return alpha_; }
  /// Gain inside the reference distance.
  [[nodiscard]] double clamp_gain() const noexcept { return clamp_gain_; }

  [[nodiscard]] double gain(double distance) const noexcept {
    return distance <= d0_ ? clamp_gain_ : std::pow(distance, -alpha_);
  }

 private:
  double d0_;
  double alpha_;
  double clamp_gain_;
};

struct LinkFading {
  double gain = 1.0;   ///< Rayleigh power gain, Exp(1)
  double phase = 0.0;  ///< uniform on [0, 2 pi)
};

double path_loss(double distance, const PathLossModel& model);

std::vector<LinkFading> sample_link_fadings(std::size_t n, RandomStream& rng);
LinkFading sample_link_fading(RandomStream& rng);

double dbm_to_watts(double dbm);

/// Thermal noise power in watts over `bandwidth_hz` for a PSD in dBm/Hz.
double noise_power(double bandwidth_hz, double noise_psd_dbm_hz);

}  // namespace udn
