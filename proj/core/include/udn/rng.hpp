#pragma once

#include <cstdint>
#include <random>

namespace udn {

/// Deterministic, splittable random stream.
///
/// A stream is identified by a 64-bit key. `split(i)` derives an independent
/// child whose key depends only on the parent key and `i`, so work units that
/// each own `root.split(unit_index)` produce identical draws regardless of
/// execution order or thread count.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  [[nodiscard]] RandomStream split(std::uint64_t index) const;
  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Unit-mean exponential.
  double exponential();
  std::uint64_t poisson(double mean);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  struct FromKey {};
  RandomStream(FromKey, std::uint64_t key);

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace udn
