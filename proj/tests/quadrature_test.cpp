#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "udn/error.hpp"
#include "udn/quadrature.hpp"

namespace udn {
namespace {

TEST(Quadrature, SmoothIntegrands) {
  const QuadratureSpec q{1e-12, 1e-15};
  EXPECT_NEAR(integral([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, q, "sin"),
              2.0, 1e-12);
  EXPECT_NEAR(integral([](double x) { return std::exp(-x); }, 0.0, 50.0, q, "exp"),
              -std::expm1(-50.0), 1e-12);
}

TEST(Quadrature, KinkAtBreakpoint) {
  const QuadratureSpec q{1e-10, 1e-14};
  const auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, q, "abs",
                           std::initializer_list<double>{0.3, 5.0});
  EXPECT_NEAR(r.value, 0.045 + 0.245, 1e-12);
  EXPECT_LE(r.abs_error, 1e-10 * r.value);
}

TEST(Quadrature, IntegrableSingularity) {
  const QuadratureSpec q{1e-8, 1e-14, 10'000};
  EXPECT_NEAR(integral([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, q, "rsqrt"), 2.0,
              1e-7);
}

TEST(Quadrature, ReversedAndEmptyIntervals) {
  const QuadratureSpec q;
  EXPECT_EQ(integral([](double) { return 1.0; }, 2.0, 2.0, q, "empty"), 0.0);
  EXPECT_NEAR(integral([](double x) { return x; }, 1.0, 0.0, q, "rev"), -0.5, 1e-14);
}

TEST(Quadrature, FailureNamesTheIntegral) {
  QuadratureSpec q{1e-14, 0.0, 2};
  try {
    integral([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, q, "wiggle");
    FAIL() << "expected NumericalFailure";
  } catch (const NumericalFailure& e) {
    EXPECT_NE(std::string(e.what()).find("wiggle"), std::string::npos);
  }
}

TEST(Quadrature, RejectsBadSpec) {
  EXPECT_THROW((QuadratureSpec{0.0, 0.0}.validate()), InvalidParameter);
  EXPECT_THROW((QuadratureSpec{1e-6, 1e-13, 0}.validate()), InvalidParameter);
}

TEST(Quadrature, NestedIsTighter) {
  const QuadratureSpec q;
  EXPECT_LT(q.nested().rel_tol, q.rel_tol);
  EXPECT_LE(q.nested().abs_tol, q.abs_tol);
}

}  // namespace
}  // namespace udn
