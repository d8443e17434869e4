#include "udn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <math.h>  // boost 1.74 pchip calls unqualified isnan

#include <boost/math/interpolators/pchip.hpp>

#include "udn/error.hpp"
#include "udn/geometry.hpp"

namespace udn {
namespace {

constexpr double kPi = std::numbers::pi;

double empty_cell_probability(const AnalyticParams& p) {
  return std::exp(-p.rap_density * kPi * p.cell_radius * p.cell_radius);
}

}  // namespace

AnalyticParams AnalyticParams::from_config(const NetworkConfig& cfg,
                                           std::optional<double> split_distance) {
  cfg.validate();
  AnalyticParams p;
  p.rap_density = cfg.rap_density;
  p.user_density = cfg.user_density;
  p.cell_radius = cfg.cell_radius;
  p.min_separation = cfg.min_separation;
  p.path_loss = cfg.path_loss;
  p.noise_over_power = cfg.noise_over_power();
  p.bandwidth = cfg.bandwidth;
  p.split_distance =
      split_distance.value_or(default_split(cfg.min_separation, cfg.cell_radius));
  p.validate();
  return p;
}

double AnalyticParams::default_split(double min_separation, double cell_radius) {
  return std::max(5.0 * min_separation, 10.0 * cell_radius);
}

void AnalyticParams::validate() const {
  auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!nonneg(rap_density) || !nonneg(user_density)) {
    throw InvalidParameter("densities must be non-negative");
  }
  if (!nonneg(cell_radius) || !nonneg(min_separation)) {
    throw InvalidParameter("C and D must be non-negative");
  }
  if (!nonneg(noise_over_power)) throw InvalidParameter("normalised noise must be non-negative");
  if (!(bandwidth > 0.0)) throw InvalidParameter("bandwidth must be positive");
  const double lower = std::max(min_separation, path_loss.reference_distance());
  if (!(split_distance >= lower) || !std::isfinite(split_distance)) {
    throw InvalidParameter("near/far split distance must be at least max(D, d0) = " +
                           std::to_string(lower) + " m");
  }
}

// --- Signal -----------------------------------------------------------------

double mean_signal(const AnalyticParams& p) {
  const double c = p.cell_radius;
  const double d0 = p.path_loss.reference_distance();
  const double alpha = p.path_loss.exponent();
  const double inner = std::min(c, d0);
  double radial = p.path_loss.clamp_gain() * inner * inner / 2.0;
  if (c > d0) radial += (std::pow(c, 2.0 - alpha) - std::pow(d0, 2.0 - alpha)) / (2.0 - alpha);
  return 2.0 * kPi * p.rap_density * radial;
}

double laplace_signal_exponent(double t, const AnalyticParams& p, const QuadratureSpec& q) {
  if (!(t >= 0.0)) throw InvalidParameter("Laplace argument must be non-negative");
  const double c = p.cell_radius;
  if (t == 0.0 || c == 0.0 || p.rap_density == 0.0) return 0.0;
  const double scale = 2.0 * kPi * p.rap_density;
  if (std::isinf(t)) return scale * c * c / 2.0;

  const double d0 = p.path_loss.reference_distance();
  const double alpha = p.path_loss.exponent();
  const double l0 = p.path_loss.clamp_gain();
  const double inner = std::min(c, d0);
  // t l / (1 + t l) is constant inside the clamp radius.
  double exponent = scale * (t * l0 / (1.0 + t * l0)) * inner * inner / 2.0;
  if (c > d0) {
    // t l(r) r / (1 + t l(r)) = t r / (r^alpha + t) beyond d0.
    const double knee = std::pow(t, 1.0 / alpha);
    exponent += integral(
        [&](double r) { return scale * t * r / (std::pow(r, alpha) + t); }, d0, c, q,
        "signal Laplace exponent", {knee});
  }
  return exponent;
}

double laplace_signal(double t, const AnalyticParams& p, const QuadratureSpec& q) {
  return std::exp(-laplace_signal_exponent(t, p, q));
}

// --- MRT power weights ---------------------------------------------------------

double weight_moment(double r, const AnalyticParams& p, const QuadratureSpec& q) {
  const double c = p.cell_radius;
  if (!(r >= 0.0) || r > c * (1.0 + 1e-12)) {
    throw InvalidParameter("weight moment needs 0 <= r <= C (r = " + std::to_string(r) +
                           ", C = " + std::to_string(c) + ")");
  }
  if (c == 0.0 || p.rap_density == 0.0) return 1.0;
  const double lr = p.path_loss.gain(r);
  const QuadratureSpec inner = q.nested();

  // With t = e^x the kernel (1 + t)^-2 dt becomes e^x / (1 + e^x)^2 dx and
  // L_S(t / l(r)) turns from 1 to its floor around x = ln(l(r) / E[S]); both
  // ends are closed analytically with L_S at its limits.
  const double centre = std::log(lr / mean_signal(p));
  const double x_lo = std::min(centre, 0.0) - 30.0;
  const double x_hi = std::max(centre, 0.0) + 40.0;
  const double floor = laplace_signal(std::numeric_limits<double>::infinity(), p, inner);
  const double head = 1.0 / (1.0 + std::exp(-x_lo));
  const double tail = floor / (1.0 + std::exp(x_hi));

  std::vector<double> panels;
  for (double x = std::ceil(x_lo); x < x_hi; x += 2.0) panels.push_back(x);
  const double body = integrate(
      [&](double x) {
        const double e = std::exp(x);
        return e / ((1.0 + e) * (1.0 + e)) * laplace_signal(e / lr, p, inner);
      },
      x_lo, x_hi, q, "weight moment", panels).value;
  return head + body + tail;
}

WeightMomentTable::WeightMomentTable(std::vector<double> radii, std::vector<double> values)
    : radii_(std::move(radii)), values_(std::move(values)) {
  if (radii_.empty() || radii_.size() != values_.size()) {
    throw InvalidParameter("weight table needs matching, non-empty radius and value grids");
  }
  if (!std::is_sorted(radii_.begin(), radii_.end()) ||
      std::adjacent_find(radii_.begin(), radii_.end()) != radii_.end()) {
    throw InvalidParameter("weight table radii must be strictly increasing");
  }
  if (radii_.size() >= 4) {
    auto x = radii_;
    auto y = values_;
    interp_ = std::make_unique<Interpolator>(std::move(x), std::move(y));
  } else if (radii_.size() != 1) {
    throw InvalidParameter("weight table needs one node or at least four");
  }
}

WeightMomentTable::~WeightMomentTable() = default;
WeightMomentTable::WeightMomentTable(WeightMomentTable&&) noexcept = default;
WeightMomentTable& WeightMomentTable::operator=(WeightMomentTable&&) noexcept = default;

double WeightMomentTable::operator()(double r) const {
  if (!interp_) return values_.front();
  const double x = std::clamp(r, radii_.front(), radii_.back());
  return std::clamp((*interp_)(x), 0.0, 1.0);
}

WeightMomentTable build_weight_table(const AnalyticParams& p, const QuadratureSpec& q,
                                     std::size_t n_grid) {
  if (n_grid < 8) throw InvalidParameter("weight table needs at least 8 nodes");
  const double c = p.cell_radius;
  if (c == 0.0) return WeightMomentTable({0.0}, {weight_moment(0.0, p, q)});

  const double d0 = p.path_loss.reference_distance();
  std::vector<double> radii;
  radii.reserve(n_grid);
  if (c <= d0) {
    for (std::size_t i = 0; i < n_grid; ++i) radii.push_back(c * i / (n_grid - 1));
  } else {
    radii.push_back(0.0);
    const std::size_t n_geo = n_grid - 1;
    const double ratio = c / d0;
    for (std::size_t i = 0; i < n_geo; ++i) {
      radii.push_back(d0 * std::pow(ratio, static_cast<double>(i) / (n_geo - 1)));
    }
    radii.back() = c;
  }
  std::vector<double> values;
  values.reserve(radii.size());
  for (double r : radii) values.push_back(weight_moment(r, p, q));
  // Enforce the non-increasing shape against quadrature jitter at flat spots.
  for (std::size_t i = 1; i < values.size(); ++i) values[i] = std::min(values[i], values[i - 1]);
  return WeightMomentTable(std::move(radii), std::move(values));
}

// --- Interference -------------------------------------------------------------

double laplace_cell_interference(double t, double rho, const AnalyticParams& p,
                                 const QuadratureSpec& q, const WeightMomentTable& table) {
  if (!(t >= 0.0) || !(rho >= 0.0)) {
    throw InvalidParameter("cell interference needs t >= 0 and rho >= 0");
  }
  const double c = p.cell_radius;
  if (t == 0.0 || c == 0.0 || p.rap_density == 0.0) return 1.0;

  const double d0 = p.path_loss.reference_distance();
  const double alpha = p.path_loss.exponent();
  const double l0 = p.path_loss.clamp_gain();
  const double scale = 2.0 * p.rap_density;  // theta in [0, pi], doubled
  const QuadratureSpec inner = q.nested();

  auto angular = [&](double r) {
    const double tw = t * table(r);
    if (tw == 0.0) return 0.0;
    std::vector<double> cuts;
    if (r > 0.0 && rho > 0.0) {
      // theta at which the RAP-to-typical-user distance crosses d0.
      const double cos_kink = (rho * rho + r * r - d0 * d0) / (2.0 * r * rho);
      if (cos_kink > -1.0 && cos_kink < 1.0) cuts.push_back(std::acos(cos_kink));
    }
    auto f = [&](double theta) {
      const double dist2 = rho * rho + r * r - 2.0 * r * rho * std::cos(theta);
      if (dist2 <= d0 * d0) return tw * l0 / (1.0 + tw * l0);
      return tw / (std::pow(dist2, alpha / 2.0) + tw);
    };
    return integrate(f, 0.0, kPi, inner, "cell interference (angular)", cuts).value;
  };

  const double exponent = integral(
      [&](double r) { return scale * r * angular(r); }, 0.0, c, q,
      "cell interference (radial)", {d0, rho - d0, rho + d0, rho});
  return std::exp(-exponent);
}

double laplace_cell_interference_far(double t, double rho, const AnalyticParams& p) {
  if (!(t >= 0.0)) throw InvalidParameter("Laplace argument must be non-negative");
  if (!(rho >= p.path_loss.reference_distance())) {
    throw InvalidParameter("far-field cell approximation needs rho >= d0");
  }
  const double empty = empty_cell_probability(p);
  return empty + (1.0 - empty) / (1.0 + t * std::pow(rho, -p.path_loss.exponent()));
}

double far_field_tail_integral(double t, double d, double alpha, const QuadratureSpec& q) {
  if (!(alpha > 2.0)) {
    throw InvalidParameter(
        "far-field interference diverges for alpha <= 2: the aggregate interference from an "
        "infinite plane is unbounded");
  }
  if (!(t >= 0.0) || !(d > 0.0)) throw InvalidParameter("tail integral needs t >= 0, d > 0");
  if (t == 0.0) return 0.0;

  // In x = ln rho the integrand is t rho^2 / (rho^alpha + t). Beyond R the
  // integral lies below t R^(2-alpha) / (alpha - 2), which is added as the
  // tail estimate once it is negligible against the accumulated value.
  auto bound = [&](double r) { return t * std::pow(r, 2.0 - alpha) / (alpha - 2.0); };
  auto f = [&](double x) {
    const double rho = std::exp(x);
    return t * rho * rho / (std::pow(rho, alpha) + t);
  };
  const double knee = std::pow(t, 1.0 / alpha);
  double lo = d;
  double hi = std::max(d, knee) * 10.0;
  double total = 0.0;
  for (int decade = 0; decade < 400; ++decade) {
    total += integral(f, std::log(lo), std::log(hi), q, "far-field tail", {std::log(knee)});
    const double rest = bound(hi);
    if (rest <= q.rel_tol * (total + rest)) return total + rest;
    lo = hi;
    hi *= 10.0;
  }
  throw NumericalFailure("far-field tail integral did not reach tolerance; alpha = " +
                         std::to_string(alpha) + " is too close to 2");
}

double laplace_interference(double t, const AnalyticParams& p, const QuadratureSpec& q,
                            const WeightMomentTable& table) {
  if (!(t >= 0.0)) throw InvalidParameter("Laplace argument must be non-negative");
  if (!(p.path_loss.exponent() > 2.0)) {
    throw InvalidParameter("interference diverges for alpha <= 2");
  }
  if (t == 0.0 || p.user_density == 0.0) return 1.0;

  const double density = p.user_density * scheduling_probability(p.user_density, p.min_separation);
  const double scale = 2.0 * kPi * density;
  const double d = p.split_distance;
  const double c = p.cell_radius;
  const double d0 = p.path_loss.reference_distance();
  const QuadratureSpec inner = q.nested();

  // An absolute error e in the exponent is a relative error e in L_J.
  QuadratureSpec near = q;
  near.abs_tol = std::max(q.abs_tol, q.rel_tol);
  double exponent = 0.0;
  if (d > p.min_separation) {
    // A uniform error e in 1 - L_I moves the exponent by at most scale e (d^2 - D^2) / 2.
    QuadratureSpec cell = near.nested();
    cell.abs_tol /= scale * 0.5 * (d * d - p.min_separation * p.min_separation);
    exponent += integral(
        [&](double rho) {
          const double li = laplace_cell_interference(t, rho, p, cell, table);
          return scale * (1.0 - li) * rho;
        },
        p.min_separation, d, near, "near-field interference", {c - d0, c, c + d0});
  }
  exponent += scale * (1.0 - empty_cell_probability(p)) *
              far_field_tail_integral(t, d, p.path_loss.exponent(), inner);
  return std::exp(-exponent);
}

// --- Throughput -----------------------------------------------------------------

double throughput_integral(double bandwidth, double noise_over_power,
                           const ThroughputIntegrand& integrand, const QuadratureSpec& q) {
  if (!(bandwidth > 0.0)) throw InvalidParameter("bandwidth must be positive");
  if (!(noise_over_power >= 0.0)) throw InvalidParameter("noise must be non-negative");
  if (!(integrand.mean_signal >= 0.0)) throw InvalidParameter("mean signal must be >= 0");
  if (integrand.mean_signal == 0.0) return 0.0;

  // Below t_lo, [1 - L_S(t)] / t = E[S] + O(t) and exp(-t n) L_J(t) = 1 + O(t).
  const double t_lo = 1e-3 * q.rel_tol / integrand.mean_signal;
  const double head = integrand.mean_signal * t_lo;

  double t_hi = 0.0;
  if (noise_over_power > 0.0) {
    t_hi = 60.0 / noise_over_power;
  } else {
    t_hi = t_lo;
    for (int i = 0; i < 200 && integrand.interference_laplace(t_hi) > 1e-30; ++i) t_hi *= 10.0;
    if (integrand.interference_laplace(t_hi) > 1e-30) {
      throw NumericalFailure("throughput integral is unbounded: no noise and no interference");
    }
  }
  if (t_hi <= t_lo) return head;

  const double x_lo = std::log(t_lo);
  const double x_hi = std::log(t_hi);
  std::vector<double> panels;
  for (double x = std::ceil(x_lo); x < x_hi; x += 1.0) panels.push_back(x);

  auto f = [&](double x) {
    const double t = std::exp(x);
    const double damp = std::exp(-t * noise_over_power);
    if (damp == 0.0) return 0.0;
    return damp * integrand.interference_laplace(t) * integrand.signal_complement(t);
  };
  const double body = integrate(f, x_lo, x_hi, q, "throughput integral", panels).value;
  return bandwidth / std::numbers::ln2 * (head + body);
}

double tau_analytic(const AnalyticParams& p, const QuadratureSpec& q,
                    const WeightMomentTable& table) {
  p.validate();
  q.validate();
  const QuadratureSpec inner = q.nested();
  ThroughputIntegrand integrand{
      [&](double t) { return -std::expm1(-laplace_signal_exponent(t, p, inner)); },
      [&](double t) { return laplace_interference(t, p, inner, table); }, mean_signal(p)};
  return throughput_integral(p.bandwidth, p.noise_over_power, integrand, q);
}

double tau_analytic(const AnalyticParams& p, const QuadratureSpec& q, std::size_t table_grid) {
  p.validate();
  q.validate();
  const auto table = build_weight_table(p, q.nested(), table_grid);
  return tau_analytic(p, q, table);
}

double tau_farfield_only(const AnalyticParams& p, const QuadratureSpec& q) {
  AnalyticParams far = p;
  far.split_distance = std::max(p.min_separation, p.path_loss.reference_distance());
  far.validate();
  if (far.split_distance > far.min_separation) return tau_analytic(far, q);  // D < d0
  // With the split at D the near field is empty, so the table is never read.
  const WeightMomentTable unused({0.0}, {1.0});
  return tau_analytic(far, q, unused);
}

std::vector<EtaPoint> eta_analytic(const AnalyticParams& base, std::span<const double> d_grid,
                                   std::optional<double> cell_to_separation,
                                   const QuadratureSpec& q, std::optional<double> split_distance,
                                   std::size_t table_grid) {
  if (d_grid.empty()) throw InvalidParameter("separation grid must not be empty");
  std::vector<EtaPoint> out;
  out.reserve(d_grid.size());
  for (double d : d_grid) {
    AnalyticParams p = base;
    p.min_separation = d;
    if (cell_to_separation) p.cell_radius = *cell_to_separation * d;
    p.split_distance = split_distance.value_or(AnalyticParams::default_split(d, p.cell_radius));
    p.split_distance = std::max(p.split_distance, p.path_loss.reference_distance());
    const double tau = tau_analytic(p, q, table_grid);
    const double density = p.user_density * scheduling_probability(p.user_density, d);
    out.push_back({d, p.cell_radius, tau, density * tau});
  }
  return out;
}

}  // namespace udn
