#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "udn/channel.hpp"
#include "udn/config.hpp"
#include "udn/error.hpp"

namespace udn {
namespace {

TEST(PathLoss, ClampsInsideReferenceDistance) {
  const PathLossModel m(10.0, 3.6);
  EXPECT_DOUBLE_EQ(path_loss(0.0, m), std::pow(10.0, -3.6));
  EXPECT_DOUBLE_EQ(path_loss(5.0, m), std::pow(10.0, -3.6));
  EXPECT_DOUBLE_EQ(path_loss(10.0, m), std::pow(10.0, -3.6));
  EXPECT_NEAR(path_loss(100.0, m), 6.30957344480193e-08, 1e-20);
}

TEST(PathLoss, NonIncreasingInDistance) {
  const PathLossModel m(10.0, 3.6);
  double prev = path_loss(0.0, m);
  for (double d = 0.5; d < 1e5; d *= 1.3) {
    const double g = path_loss(d, m);
    EXPECT_LE(g, prev);
    prev = g;
  }
}

TEST(PathLoss, RejectsNonPhysicalModels) {
  EXPECT_THROW(PathLossModel(10.0, 2.0), InvalidParameter);
  EXPECT_THROW(PathLossModel(10.0, 1.5), InvalidParameter);
  EXPECT_THROW(PathLossModel(0.0, 3.6), InvalidParameter);
  EXPECT_THROW(path_loss(-1.0, PathLossModel(10.0, 3.6)), InvalidParameter);
}

TEST(Fading, ExponentialPowerAndUniformPhase) {
  RandomStream rng(123);
  const std::size_t n = 100'000;
  std::vector<double> gains(n);
  double sum = 0.0, above_one = 0.0, phase_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const LinkFading f = sample_link_fading(rng);
    ASSERT_GE(f.phase, 0.0);
    ASSERT_LT(f.phase, 2.0 * std::numbers::pi);
    gains[i] = f.gain;
    sum += f.gain;
    phase_sum += f.phase;
    if (f.gain > 1.0) above_one += 1.0;
  }
  EXPECT_NEAR(sum / n, 1.0, 3.0 / std::sqrt(static_cast<double>(n)));
  const double p = std::exp(-1.0);
  EXPECT_NEAR(above_one / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
  EXPECT_NEAR(phase_sum / n, std::numbers::pi, 3.0 * 2.0 * std::numbers::pi / std::sqrt(12.0 * n));

  // Kolmogorov-Smirnov against Exp(1); 1.628 is the 1% critical value.
  std::sort(gains.begin(), gains.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = -std::expm1(-gains[i]);
    ks = std::max({ks, (i + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  EXPECT_LT(ks, 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST(Noise, ThermalFloor) {
  EXPECT_NEAR(noise_power(10e6, -174.0), 3.9810717055349693e-14, 1e-26);
  EXPECT_NEAR(noise_power(1.0, -174.0), 3.981071705534986e-21, 1e-33);
  EXPECT_THROW(noise_power(0.0, -174.0), InvalidParameter);
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
}

TEST(Noise, ReferenceNoiseOverPower) {
  const NetworkConfig cfg;
  EXPECT_NEAR(std::log10(cfg.noise_over_power()), -12.8, 1e-12);
}

}  // namespace
}  // namespace udn
