#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "udn/config.hpp"
#include "udn/rng.hpp"
#include "udn/schemes.hpp"

namespace udn {

/// Signal and interference power at the typical user, both normalised by the
/// per-user transmit power P.
struct SinrSample {
  double signal = 0.0;
  double interference = 0.0;
  double noise_over_power = 0.0;

  [[nodiscard]] double sinr() const noexcept {
    const double denom = interference + noise_over_power;
    if (signal == 0.0) return 0.0;
    return signal / denom;
  }
};

/// B log2(1 + SINR), bit/s.
double throughput_bits(const SinrSample& sample, double bandwidth);

struct ThroughputEstimate {
  double mean = 0.0;            ///< bit/s
  double ci95_halfwidth = 0.0;  ///< bit/s, clustered by drop
  std::size_t n_samples = 0;
  std::size_t n_drops = 0;
  double bandwidth = 0.0;
  double between_drop_variance = 0.0;  ///< variance of per-drop means
  double within_drop_variance = 0.0;   ///< pooled variance inside drops
};

struct MonteCarloSpec {
  std::size_t n_drops = 200;
  std::size_t fadings_per_drop = 20;
  std::uint64_t seed = 1;
  unsigned threads = 0;  ///< 0 = hardware concurrency; results do not depend on it
};

/// One geometric realisation followed by `fadings_per_drop` independent fading
/// draws. Interference sums every foreign virtual cell in the window, each RAP
/// contributing l(|x_i - u_0|) g_i0 w_ik with its own cell's encoder weight.
std::vector<SinrSample> run_drop(const NetworkConfig& cfg, Scheme scheme, RandomStream& rng,
                                 std::size_t fadings_per_drop);

/// Mean throughput with a drop-clustered 95% confidence interval.
ThroughputEstimate summarize_throughput(std::span<const std::vector<SinrSample>> drops,
                                        double bandwidth);

/// Drop i draws from RandomStream(seed).split(i), so every scheme sees the
/// same geometry and fading sequence for a given seed.
ThroughputEstimate estimate_tau(const NetworkConfig& cfg, Scheme scheme,
                                const MonteCarloSpec& spec);

struct EtaEstimate {
  double min_separation = 0.0;
  double cell_radius = 0.0;
  ThroughputEstimate tau;
  double spatial_throughput = 0.0;  ///< bit/s/m^2
  double spatial_ci95_halfwidth = 0.0;
};

std::vector<EtaEstimate> estimate_eta(const NetworkConfig& cfg, Scheme scheme,
                                      std::span<const double> d_grid,
                                      std::optional<double> cell_to_separation,
                                      const MonteCarloSpec& spec);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Brute-force mean MRT weight of a RAP pinned at distance r from its user,
/// with the rest of the cell drawn from the RAP process.
MeanEstimate empirical_weight_moment(const NetworkConfig& cfg, double r,
                                     std::size_t n_realizations, std::uint64_t seed);

double empirical_laplace(std::span<const double> samples, double t);
MeanEstimate empirical_laplace_estimate(std::span<const double> samples, double t);

/// Channel state of a single cell around a user, RAPs drawn inside radius C.
CellChannelState sample_isolated_cell(const NetworkConfig& cfg, RandomStream& rng);

std::vector<double> sample_cell_signal(const NetworkConfig& cfg, Scheme scheme, std::size_t n,
                                       RandomStream& rng);

}  // namespace udn
