#include "udn/rng.hpp"

#include "udn/error.hpp"

namespace udn {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t key) {
  const std::uint64_t a = splitmix64(key);
  const std::uint64_t b = splitmix64(a);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : RandomStream(FromKey{}, splitmix64(seed)) {}

RandomStream::RandomStream(FromKey, std::uint64_t key) : key_(key), engine_(seeded_engine(key)) {}

RandomStream RandomStream::split(std::uint64_t index) const {
  return RandomStream(FromKey{}, splitmix64(key_ ^ splitmix64(index * kGolden + 1)));
}

double RandomStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RandomStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RandomStream::exponential() {
  return std::exponential_distribution<double>(1.0)(engine_);
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw InvalidParameter("poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(engine_);
}

}  // namespace udn
