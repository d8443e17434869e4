#pragma once

#include "udn/channel.hpp"
#include "udn/geometry.hpp"

namespace udn {

/// Physical and geometric parameters of one scenario, SI units throughout
/// (metres, m^-2, Hz). Defaults are the reference deployment: 50 RAPs/km^2,
/// 20 users/km^2, C = 200 m, D = 400 m, alpha = 3.6, d0 = 10 m, 10 MHz,
/// -174 dBm/Hz, 24 dBm per user, 10 km square toroidal window.
struct NetworkConfig {
  double rap_density = 50e-6;
  double user_density = 20e-6;
  double cell_radius = 200.0;
  double min_separation = 400.0;
  PathLossModel path_loss{10.0, 3.6};
  double bandwidth = 10e6;
  double noise_psd_dbm_hz = -174.0;
  double tx_power_dbm = 24.0;
  Window window{10'000.0, 10'000.0, Metric::Toroidal};

  /// sigma_n^2 / P, dimensionless.
  [[nodiscard]] double noise_over_power() const;

  /// Throws InvalidParameter on non-physical values.
  void validate() const;
};

}  // namespace udn
