#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "rng.hpp"
#include "stats.hpp"

using namespace qtel;

TEST_SUITE("rng") {
  TEST_CASE("same seed reproduces the stream exactly") {
    Rng a(12345);
    Rng b(12345);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  }

  TEST_CASE("different seeds give different streams") {
    Rng a(1);
    Rng b(2);
    int equal = 0;
    for (int i = 0; i < 64; ++i) equal += a.next_u64() == b.next_u64();
    CHECK(equal == 0);
  }

  TEST_CASE("splitmix64 advances deterministically") {
    std::uint64_t s1 = 99;
    std::uint64_t s2 = 99;
    const std::uint64_t a = splitmix64_next(s1);
    const std::uint64_t b = splitmix64_next(s1);
    CHECK(a != b);
    CHECK(splitmix64_next(s2) == a);
    CHECK(splitmix64_next(s2) == b);
  }

  TEST_CASE("no repeats in a short window") {
    Rng rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 4096; ++i) seen.insert(rng.next_u64());
    CHECK(seen.size() == 4096);
  }

  TEST_CASE("uniform range and moments") {
    Rng rng(2024);
    const std::size_t n = 200000;
    std::vector<double> u(n);
    for (auto& x : u) {
      x = rng.uniform();
      REQUIRE(x >= 0.0);
      REQUIRE(x < 1.0);
    }
    // mean 1/2, variance 1/12
    CHECK(std::fabs(stats::mean(u) - 0.5) <
          5 * stats::mean_se(1.0 / 12.0, n));
    CHECK(std::fabs(stats::variance(u) - 1.0 / 12.0) < 0.002);
  }

  TEST_CASE("normal moments") {
    Rng rng(5150);
    const std::size_t n = 400000;
    std::vector<double> z(n);
    double m3 = 0.0;
    double m4 = 0.0;
    for (auto& x : z) x = rng.normal();
    const double m = stats::mean(z);
    const double v = stats::variance(z);
    for (double x : z) {
      const double d = x - m;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    CHECK(std::fabs(m) < 5 * stats::mean_se(1.0, n));
    CHECK(std::fabs(v - 1.0) < 5 * stats::var_se(1.0, n));
    CHECK(std::fabs(m3) < 0.05);             // skewness ~ N(0, 6/n)
    CHECK(std::fabs(m4 - 3.0) < 0.1);        // excess kurtosis
  }

  TEST_CASE("scaled normal applies mean and stddev") {
    Rng rng(31);
    const std::size_t n = 200000;
    std::vector<double> z(n);
    for (auto& x : z) x = rng.normal(-2.5, 3.0);
    CHECK(std::fabs(stats::mean(z) + 2.5) < 5 * stats::mean_se(9.0, n));
    CHECK(std::fabs(stats::variance(z) - 9.0) < 5 * stats::var_se(9.0, n));
  }

  TEST_CASE("normal consumes exactly two uniforms") {
    Rng a(777);
    Rng b(777);
    (void)a.normal();
    (void)b.uniform();
    (void)b.uniform();
    CHECK(a.next_u64() == b.next_u64());
  }

  TEST_CASE("substreams are stable and distinct") {
    Rng s0 = substream(42, 0);
    Rng s0b = substream(42, 0);
    Rng s1 = substream(42, 1);
    Rng direct(42);
    bool same_as_copy = true;
    int collide_next = 0;
    int collide_direct = 0;
    for (int i = 0; i < 256; ++i) {
      const std::uint64_t x = s0.next_u64();
      same_as_copy = same_as_copy && (x == s0b.next_u64());
      collide_next += x == s1.next_u64();
      collide_direct += x == direct.next_u64();
    }
    CHECK(same_as_copy);
    CHECK(collide_next == 0);
    CHECK(collide_direct == 0);
  }

  TEST_CASE("substream draws look independent across streams") {
    // Correlation between matched draws of adjacent substreams.
    const std::size_t n = 100000;
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rng ra = substream(90210, i);
      Rng rb = substream(90210, i + 1);
      a[i] = ra.normal();
      b[i] = rb.normal();
    }
    const double corr = stats::covariance(a, b) /
                        std::sqrt(stats::variance(a) * stats::variance(b));
    CHECK(std::fabs(corr) < 5.0 / std::sqrt(static_cast<double>(n)));
  }
}
