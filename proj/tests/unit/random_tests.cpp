#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "tcs/random.hpp"

using tcs::Rng;

TEST_CASE("identical seeds give identical streams") {
  Rng a(1234), b(1234);
  for (int i = 0; i < 200; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different seeds diverge") {
  Rng a(1), b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next() == b.next()) ++equal;
  CHECK(equal < 4);
}

TEST_CASE("fork depends on the origin seed, not on parent draws") {
  Rng fresh(77);
  Rng burned(77);
  for (int i = 0; i < 1000; ++i) burned.next();
  Rng f1 = fresh.fork("choice", 3, 9);
  Rng f2 = burned.fork("choice", 3, 9);
  for (int i = 0; i < 100; ++i) CHECK(f1.next() == f2.next());
}

TEST_CASE("forks with different tags or indices are distinct streams") {
  Rng root(42);
  Rng a = root.fork("choice", 1, 2);
  Rng b = root.fork("choice", 1, 3);
  Rng c = root.fork("market", 1, 2);
  CHECK(a.next() != b.next());
  Rng a2 = root.fork("choice", 1, 2);
  CHECK(a2.next() != c.next());
}

TEST_CASE("uniform stays in [0, 1)") {
  Rng r(5);
  for (int i = 0; i < 10'000; ++i) {
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_int covers its inclusive bounds") {
  Rng r(6);
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) {
    int v = r.uniform_int(-2, 2);
    CHECK(v >= -2);
    CHECK(v <= 2);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("bounded draws are below the bound") {
  Rng r(7);
  for (int i = 0; i < 1000; ++i) CHECK(r.bounded(13) < 13);
}

TEST_CASE("normal matches its first two moments") {
  Rng r(8);
  const int n = 100'000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = r.normal(2.0, 3.0);
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.02));
  CHECK(var == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("lognormal mean follows exp(mu + sigma^2/2)") {
  Rng r(9);
  const double mu = -1.0, sigma = 0.5;
  const int n = 200'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += r.lognormal(mu, sigma);
  CHECK(sum / n == doctest::Approx(std::exp(mu + 0.5 * sigma * sigma)).epsilon(0.02));
}

TEST_CASE("triangular respects bounds and mean") {
  Rng r(10);
  const double lo = 1.0, mode = 2.0, hi = 4.0;
  const int n = 100'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = r.triangular(lo, mode, hi);
    CHECK(x >= lo);
    CHECK(x <= hi);
    sum += x;
  }
  CHECK(sum / n == doctest::Approx((lo + mode + hi) / 3.0).epsilon(0.01));
}

TEST_CASE("bernoulli extremes are deterministic") {
  Rng r(11);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(r.bernoulli(0.0));
    CHECK(r.bernoulli(1.0));
  }
}

TEST_CASE("poisson mean tracks lambda") {
  Rng r(12);
  const double lambda = 4.5;
  const int n = 50'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += r.poisson(lambda);
  CHECK(sum / n == doctest::Approx(lambda).epsilon(0.03));
}
