#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace tcs {

// Deterministic pseudo-random stream (xoshiro256++). Distributions are
// implemented here rather than taken from <random> so that identical seeds
// give identical draws on every platform and standard library.
//
// Substreams are derived from the construction seed, not from the mutable
// generator state: fork("choice", day, traveler) yields the same stream no
// matter how many draws happened on the parent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  std::uint64_t bounded(std::uint64_t n);  // uniform in [0, n), n > 0
  int uniform_int(int lo, int hi);         // inclusive bounds

  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);
  double normal(double mean = 0.0, double sd = 1.0);
  double lognormal(double mu, double sigma);
  // Triangular density on [lo, hi] with mode inside; inverse-CDF sampling.
  double triangular(double lo, double mode, double hi);
  int poisson(double lambda);              // lambda in (0, ~30]
  bool bernoulli(double p);

  std::uint64_t seed() const { return origin_; }

  Rng fork(std::string_view tag) const;
  Rng fork(std::string_view tag, std::uint64_t a) const;
  Rng fork(std::string_view tag, std::uint64_t a, std::uint64_t b) const;

 private:
  std::uint64_t origin_;
  std::array<std::uint64_t, 4> s_;
};

}  // namespace tcs
