#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "udn/rng.hpp"

namespace udn {
namespace {

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(RandomStream, SplitDependsOnlyOnParentKeyAndIndex) {
  const RandomStream root(7);
  RandomStream consumed(7);
  for (int i = 0; i < 10; ++i) consumed.uniform();
  RandomStream c1 = root.split(3);
  RandomStream c2 = consumed.split(3);
  EXPECT_EQ(c1.key(), c2.key());
  EXPECT_EQ(c1.uniform(), c2.uniform());
  EXPECT_NE(root.split(3).key(), root.split(4).key());
}

TEST(RandomStream, SiblingStreamsAreUncorrelated) {
  const RandomStream root(11);
  RandomStream a = root.split(0), b = root.split(1);
  const int n = 200'000;
  double sab = 0.0;
  for (int i = 0; i < n; ++i) sab += (a.uniform() - 0.5) * (b.uniform() - 0.5);
  // Var of the product is 1/144 per term.
  EXPECT_LT(std::abs(sab / n), 4.0 * std::sqrt(1.0 / 144.0 / n));
}

TEST(RandomStream, PoissonZeroMeanIsZero) {
  RandomStream r(1);
  EXPECT_EQ(r.poisson(0.0), 0U);
}

}  // namespace
}  // namespace udn
