#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "udn/channel.hpp"
#include "udn/config.hpp"
#include "udn/quadrature.hpp"

namespace boost::math::interpolators {
template <class RandomAccessContainer>
class pchip;
}

namespace udn {

/// Parameters of the Laplace-transform throughput model, SI units.
struct AnalyticParams {
  double rap_density = 50e-6;
  double user_density = 20e-6;
  double cell_radius = 200.0;
  double min_separation = 400.0;
  PathLossModel path_loss{10.0, 3.6};
  double noise_over_power = 0.0;
  double bandwidth = 10e6;
  /// Boundary between the exact near field and the single-transmitter far field.
  double split_distance = 2000.0;

  static AnalyticParams from_config(const NetworkConfig& cfg,
                                    std::optional<double> split_distance = std::nullopt);
  /// max(5 D, 10 C).
  static double default_split(double min_separation, double cell_radius);

  /// Throws InvalidParameter unless split >= max(D, d0) and densities/radii are valid.
  void validate() const;
};

inline constexpr std::size_t kDefaultTableGrid = 48;

// --- Signal -----------------------------------------------------------------

/// Closed-form E[S] = 2 pi lambda_r int_0^C l(r) r dr.
double mean_signal(const AnalyticParams& p);

/// -ln L_S(t); kept separate so 1 - L_S can be formed without cancellation.
double laplace_signal_exponent(double t, const AnalyticParams& p, const QuadratureSpec& q);

/// L_S(t) = E[exp(-t S)] for the serving-cell signal power.
double laplace_signal(double t, const AnalyticParams& p, const QuadratureSpec& q);

// --- MRT power weights ---------------------------------------------------------

/// Mean MRT power weight of a RAP at distance r <= C from its user.
double weight_moment(double r, const AnalyticParams& p, const QuadratureSpec& q);

/// Tabulated weight moment on [0, C] with monotone piecewise-cubic interpolation.
class WeightMomentTable {
 public:
  WeightMomentTable(std::vector<double> radii, std::vector<double> values);
  ~WeightMomentTable();
  WeightMomentTable(const WeightMomentTable&) = delete;
  WeightMomentTable& operator=(const WeightMomentTable&) = delete;
  WeightMomentTable(WeightMomentTable&&) noexcept;
  WeightMomentTable& operator=(WeightMomentTable&&) noexcept;

  [[nodiscard]] double operator()(double r) const;
  [[nodiscard]] std::span<const double> radii() const noexcept { return radii_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double cell_radius() const noexcept { return radii_.back(); }

 private:
  using Interpolator = boost::math::interpolators::pchip<std::vector<double>>;
  std::vector<double> radii_;
  std::vector<double> values_;
  std::unique_ptr<Interpolator> interp_;
};

/// Nodes at 0 and geometrically spaced from d0 to C (uniform when C <= d0).
WeightMomentTable build_weight_table(const AnalyticParams& p, const QuadratureSpec& q,
                                     std::size_t n_grid = kDefaultTableGrid);

// --- Interference -------------------------------------------------------------

/// Laplace transform of the interference from one virtual cell whose user sits
/// at distance rho >= D from the typical user, with weights fixed at W(r).
double laplace_cell_interference(double t, double rho, const AnalyticParams& p,
                                 const QuadratureSpec& q, const WeightMomentTable& table);

/// Same quantity with the cell collapsed to one Rayleigh transmitter at its
/// centre; closed form, requires rho >= d0.
double laplace_cell_interference_far(double t, double rho, const AnalyticParams& p);

/// int_d^inf t rho / (rho^alpha + t) d rho; throws InvalidParameter if alpha <= 2.
double far_field_tail_integral(double t, double d, double alpha, const QuadratureSpec& q);

/// L_J(t): near field [D, d) cell by cell, far field [d, inf) collapsed.
double laplace_interference(double t, const AnalyticParams& p, const QuadratureSpec& q,
                            const WeightMomentTable& table);

// --- Throughput -----------------------------------------------------------------

struct ThroughputIntegrand {
  /// 1 - L_S(t).
  std::function<double(double)> signal_complement;
  /// L_J(t).
  std::function<double(double)> interference_laplace;
  /// E[S], fixes the small-t series.
  double mean_signal = 0.0;
};

/// (B / ln 2) int_0^inf exp(-t n) L_J(t) [1 - L_S(t)] / t dt for independent
/// S and J, evaluated on log-spaced panels in ln t with a first-order series
/// below the smallest panel. Result in bit/s.
double throughput_integral(double bandwidth, double noise_over_power,
                           const ThroughputIntegrand& integrand, const QuadratureSpec& q);

/// Mean user throughput (bit/s) with near/far interference split.
double tau_analytic(const AnalyticParams& p, const QuadratureSpec& q,
                    const WeightMomentTable& table);
double tau_analytic(const AnalyticParams& p, const QuadratureSpec& q,
                    std::size_t table_grid = kDefaultTableGrid);

/// Mean user throughput with every interfering cell collapsed (split at D).
double tau_farfield_only(const AnalyticParams& p, const QuadratureSpec& q);

struct EtaPoint {
  double min_separation = 0.0;      ///< D (m)
  double cell_radius = 0.0;         ///< C (m)
  double user_throughput = 0.0;     ///< tau (bit/s)
  double spatial_throughput = 0.0;  ///< eta (bit/s/m^2)
};

/// Spatial throughput lambda_u p_r(D) tau(D) over a D grid. When
/// `cell_to_separation` is set, C = ratio * D at each point; the split
/// distance is recomputed per point unless `split_distance` is given.
std::vector<EtaPoint> eta_analytic(const AnalyticParams& base, std::span<const double> d_grid,
                                   std::optional<double> cell_to_separation,
                                   const QuadratureSpec& q,
                                   std::optional<double> split_distance = std::nullopt,
                                   std::size_t table_grid = kDefaultTableGrid);

}  // namespace udn
