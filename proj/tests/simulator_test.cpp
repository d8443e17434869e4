#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "udn/analytic.hpp"
#include "udn/simulator.hpp"

namespace udn {
namespace {

NetworkConfig small_network() {
  NetworkConfig cfg;
  cfg.window = Window(3000.0, 3000.0);
  return cfg;
}

TEST(Sinr, MonotoneInInterference) {
  double prev = INFINITY;
  for (double j = 0.0; j < 1e-9; j += 1e-11) {
    const double s = SinrSample{1e-9, j, 1e-13}.sinr();
    EXPECT_LT(s, prev);
    prev = s;
  }
  EXPECT_EQ((SinrSample{0.0, 0.0, 0.0}.sinr()), 0.0);
  EXPECT_EQ(throughput_bits({0.0, 1e-9, 1e-13}, 10e6), 0.0);
}

TEST(Sinr, SingleLinkReference) {
  const NetworkConfig cfg;
  const SinrSample s{cfg.path_loss.gain(100.0), 0.0, cfg.noise_over_power()};
  EXPECT_NEAR(throughput_bits(s, cfg.bandwidth), 186028009.5525078, 1e-3);
}

TEST(RunDrop, NoContentionMeansNoInterference) {
  auto cfg = small_network();
  cfg.user_density = 0.0;
  for (Scheme s : kAllSchemes) {
    RandomStream rng(5);
    for (const auto& x : run_drop(cfg, s, rng, 10)) EXPECT_EQ(x.interference, 0.0);
  }
}

TEST(RunDrop, EmptyCellsCarryNoSignal) {
  auto cfg = small_network();
  cfg.cell_radius = 0.0;
  RandomStream rng(6);
  for (const auto& x : run_drop(cfg, Scheme::Mrt, rng, 10)) EXPECT_EQ(x.signal, 0.0);
}

TEST(RunDrop, MrtSignalMeanMatchesCampbell) {
  const auto cfg = small_network();
  const double expected = mean_signal(AnalyticParams::from_config(cfg));
  const int drops = 4000;
  double sum = 0.0, sum_sq = 0.0;
  for (int d = 0; d < drops; ++d) {
    RandomStream rng = RandomStream(9).split(d);
    const auto s = run_drop(cfg, Scheme::Mrt, rng, 1);
    sum += s[0].signal;
    sum_sq += s[0].signal * s[0].signal;
  }
  const double mean = sum / drops;
  const double se = std::sqrt((sum_sq / drops - mean * mean) / drops);
  EXPECT_NEAR(mean, expected, 3.0 * se);
}

TEST(EstimateTau, DeterministicAndThreadIndependent) {
  const auto cfg = small_network();
  MonteCarloSpec spec{40, 5, 123, 1};
  const auto a = estimate_tau(cfg, Scheme::Mrt, spec);
  spec.threads = 4;
  const auto b = estimate_tau(cfg, Scheme::Mrt, spec);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.ci95_halfwidth, b.ci95_halfwidth);
  EXPECT_EQ(a.n_samples, 200U);
  EXPECT_EQ(a.n_drops, 40U);
  spec.seed = 124;
  EXPECT_NE(estimate_tau(cfg, Scheme::Mrt, spec).mean, a.mean);
}

TEST(EstimateTau, ClusteredIntervalOnKnownData) {
  // Two drops of constant throughput 1 and 3 bit/s (B = 1, SINR 1 and 7).
  std::vector<std::vector<SinrSample>> drops{{{1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}},
                                             {{7.0, 1.0, 0.0}, {7.0, 1.0, 0.0}}};
  const auto e = summarize_throughput(drops, 1.0);
  EXPECT_DOUBLE_EQ(e.mean, 2.0);
  // z sqrt(k/(k-1) sum (sum_d - n_d mean)^2) / N = z sqrt(2 * 8) / 4 = z.
  EXPECT_NEAR(e.ci95_halfwidth, 1.959963984540054, 1e-12);
  EXPECT_EQ(e.within_drop_variance, 0.0);
}

TEST(EstimateTau, NoiseLimitedMatchesAnalytic) {
  auto cfg = small_network();
  cfg.user_density = 0.0;
  RandomStream rng(77);
  const auto signal = sample_cell_signal(cfg, Scheme::Mrt, 100'000, rng);
  double sum = 0.0;
  for (double s : signal) sum += throughput_bits({s, 0.0, cfg.noise_over_power()}, cfg.bandwidth);
  const double mc = sum / signal.size();
  const double analytic = tau_analytic(AnalyticParams::from_config(cfg), QuadratureSpec{});
  EXPECT_NEAR(analytic, mc, 0.02 * mc);
}

TEST(WeightMomentEstimate, LoneRapTakesEverything) {
  auto cfg = small_network();
  cfg.rap_density = 0.0;
  const auto w = empirical_weight_moment(cfg, 50.0, 100, 1);
  EXPECT_EQ(w.mean, 1.0);
  EXPECT_EQ(w.std_error, 0.0);
  EXPECT_EQ(w.n, 100U);
}

TEST(WeightMomentEstimate, AgreesWithQuadrature) {
  const auto cfg = small_network();
  const auto p = AnalyticParams::from_config(cfg);
  const auto w = empirical_weight_moment(cfg, 100.0, 20'000, 3);
  EXPECT_NEAR(w.mean, weight_moment(100.0, p, QuadratureSpec{}), 3.5 * w.std_error);
}

TEST(EmpiricalLaplace, BasicCases) {
  const std::vector<double> x{0.0, 1.0, 2.0};
  EXPECT_EQ(empirical_laplace(x, 0.0), 1.0);
  EXPECT_NEAR(empirical_laplace(x, 1.0), (1.0 + std::exp(-1.0) + std::exp(-2.0)) / 3.0, 1e-15);
  const auto e = empirical_laplace_estimate(std::vector<double>(10, 2.0), 0.5);
  EXPECT_NEAR(e.mean, std::exp(-1.0), 1e-15);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(IsolatedCell, MembersLieInsideTheCell) {
  const auto cfg = small_network();
  RandomStream rng(12);
  double count = 0.0;
  const int n = 5000;
  for (int i = 0; i < n; ++i) {
    const auto cell = sample_isolated_cell(cfg, rng);
    for (const auto& l : cell.links) ASSERT_LE(l.distance, cfg.cell_radius);
    count += static_cast<double>(cell.size());
  }
  const double mean = cfg.rap_density * std::numbers::pi * cfg.cell_radius * cfg.cell_radius;
  EXPECT_NEAR(count / n, mean, 3.0 * std::sqrt(mean / n));
}

}  // namespace
}  // namespace udn
