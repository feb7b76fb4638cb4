#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace gspd {

using Seed = std::uint64_t;

/// xoshiro256** seeded through SplitMix64. Bit-identical output on every
/// platform; the std:: distributions are not, so the variate helpers below
/// are implemented here instead of using <random>.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(Seed seed);

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_pos();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal (Box-Muller, second variate cached).
  double normal();
  /// Bernoulli(prob); prob = 0 never fires, prob = 1 always fires.
  bool bernoulli(double prob);

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// One SplitMix64 step; also used as the finalizer of derive_seed.
std::uint64_t splitmix64(std::uint64_t& state);

/// Pure hash of a base seed and a '|'-joined key string. Used for the
/// per-cell/per-instance seed streams so any single instance can be
/// regenerated without replaying the rest of a sweep.
Seed derive_seed(Seed base, std::string_view key);

}  // namespace gspd
