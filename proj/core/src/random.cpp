#include "tcs/random.hpp"

#include <cmath>
#include <stdexcept>

namespace tcs {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) : origin_(seed) {
  std::uint64_t x = seed;
  for (auto& w : s_) w = splitmix64(x);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::bounded(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::bounded: n must be positive");
  // Rejection sampling on the top bits to avoid modulo bias.
  const std::uint64_t threshold = -n % n;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_int: hi < lo");
  return lo + static_cast<int>(bounded(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal(double mean, double sd) {
  // Box-Muller without caching the second variate, so a fork'd stream's
  // output depends only on the draw count.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double Rng::lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

double Rng::triangular(double lo, double mode, double hi) {
  if (!(lo <= mode && mode <= hi && lo < hi))
    throw std::invalid_argument("Rng::triangular: need lo <= mode <= hi, lo < hi");
  const double u = uniform();
  const double cut = (mode - lo) / (hi - lo);
  if (u < cut) return lo + std::sqrt(u * (hi - lo) * (mode - lo));
  return hi - std::sqrt((1.0 - u) * (hi - lo) * (hi - mode));
}

int Rng::poisson(double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("Rng::poisson: lambda must be positive");
  const double limit = std::exp(-lambda);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform();
  } while (p > limit);
  return k - 1;
}

bool Rng::bernoulli(double p) { return uniform() < p; }

Rng Rng::fork(std::string_view tag) const {
  std::uint64_t x = origin_ ^ fnv1a(tag);
  return Rng(splitmix64(x));
}

Rng Rng::fork(std::string_view tag, std::uint64_t a) const {
  std::uint64_t x = origin_ ^ fnv1a(tag);
  x = splitmix64(x) ^ a;
  return Rng(splitmix64(x));
}

Rng Rng::fork(std::string_view tag, std::uint64_t a, std::uint64_t b) const {
  std::uint64_t x = origin_ ^ fnv1a(tag);
  x = splitmix64(x) ^ a;
  x = splitmix64(x) ^ b;
  return Rng(splitmix64(x));
}

}  // namespace tcs
