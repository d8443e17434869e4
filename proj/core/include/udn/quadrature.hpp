#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string_view>

namespace udn {

/// Tolerance policy for every integral of the analytic engine. An integral is
/// accepted once its error estimate is below max(abs_tol, rel_tol * |value|).
struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-13;
  std::size_t max_subdivisions = 4000;
  /// Inner integrals feeding an outer one run this much tighter, so the outer
  /// error estimate is not dominated by inner noise.
  double nesting_factor = 0.5;

  void validate() const;
  /// Spec for an integral nested one level deeper.
  [[nodiscard]] QuadratureSpec nested() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// `breakpoints` (optional, any order, outside points ignored) seed the initial
/// partition at known kinks. Throws NumericalFailure, naming `what`, when the
/// tolerance cannot be met within `max_subdivisions` intervals.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                           std::string_view what, std::span<const double> breakpoints = {});

inline double integral(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                       std::string_view what, std::initializer_list<double> breakpoints = {}) {
  return integrate(f, a, b, spec, what, {breakpoints.begin(), breakpoints.size()}).value;
}

}  // namespace udn
