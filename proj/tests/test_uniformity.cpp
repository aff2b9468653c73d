#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "autoseq/uniformity.hpp"
#include "support.hpp"

using namespace autoseq;
using cd = std::complex<double>;

namespace {

// Direct enumeration over (n0, n1, ..., nd) with every vertex in [0, N).
double naive_interval_norm(const std::vector<cd>& f, int d) {
  const auto N = static_cast<std::int64_t>(f.size());
  cd sum = 0;
  std::uint64_t cubes = 0;
  const std::int64_t lo = -N, hi = N;
  std::vector<std::int64_t> n(static_cast<std::size_t>(d) + 1, lo);
  n[0] = 0;
  while (true) {
    bool valid = true;
    cd prod = 1;
    for (int mask = 0; mask < (1 << d) && valid; ++mask) {
      std::int64_t x = n[0];
      int bits = 0;
      for (int i = 0; i < d; ++i) {
        if (mask >> i & 1) {
          x += n[static_cast<std::size_t>(i) + 1];
          ++bits;
        }
      }
      if (x < 0 || x >= N) {
        valid = false;
        break;
      }
      const cd v = f[static_cast<std::size_t>(x)];
      prod *= bits % 2 ? std::conj(v) : v;
    }
    if (valid) {
      sum += prod;
      ++cubes;
    }
    std::size_t i = 0;
    while (i < n.size()) {
      const std::int64_t top = i == 0 ? N - 1 : hi;
      if (n[i] < top) {
        ++n[i];
        break;
      }
      n[i] = i == 0 ? 0 : lo;
      ++i;
    }
    if (i == n.size()) break;
  }
  return std::pow(std::max(0.0, sum.real() / static_cast<double>(cubes)), 1.0 / (1 << d));
}

std::vector<cd> random_signal(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> f(n);
  for (auto& x : f) x = {u(rng), u(rng)};
  return f;
}

}  // namespace

TEST_CASE("interval norm matches direct enumeration") {
  std::mt19937_64 rng(51);
  for (int d = 2; d <= 3; ++d) {
    for (int t = 0; t < 6; ++t) {
      auto f = random_signal(rng, 3 + rng() % (d == 2 ? 30 : 12));
      const double want = naive_interval_norm(f, d);
      auto got = gowers_norm_interval(FiniteSignal(f), d);
      auto serial = gowers_norm_interval_serial(FiniteSignal(f), d);
      CHECK(got.value == doctest::Approx(want).epsilon(1e-12));
      CHECK(got.value == serial.value);
      CHECK(got.cubes == serial.cubes);
    }
  }
}

TEST_CASE("interval norm trivial cases and invariances") {
  for (int d = 2; d <= 3; ++d) {
    CHECK(gowers_norm_interval(FiniteSignal::real(std::vector<double>(40, 1.0)), d).value == doctest::Approx(1.0));
    CHECK(gowers_norm_interval(FiniteSignal::real(std::vector<double>(40, 0.0)), d).value == 0.0);
    CHECK(gowers_norm_interval(FiniteSignal::real(std::vector<double>(30, -0.3)), d).value == doctest::Approx(0.3));
  }
  std::mt19937_64 rng(52);
  auto f = random_signal(rng, 40);
  const cd unit = std::polar(1.0, 0.7);
  auto g = f;
  for (auto& x : g) x *= unit;
  CHECK(gowers_norm_interval(FiniteSignal(f), 2).value ==
        doctest::Approx(gowers_norm_interval(FiniteSignal(g), 2).value).epsilon(1e-12));
  auto empty = gowers_norm_interval(FiniteSignal(), 2);
  CHECK(empty.empty);
  CHECK(empty.value == 0.0);
  CHECK_THROWS_AS(gowers_norm_interval(FiniteSignal::real(std::vector<double>(300, 1.0)), 2), std::invalid_argument);
  CHECK_THROWS_AS(gowers_norm_interval(FiniteSignal::real(std::vector<double>(100, 1.0)), 3), std::invalid_argument);
  CHECK_THROWS_AS(gowers_norm_interval(FiniteSignal::real(std::vector<double>(10, 1.0)), 4), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSignal::real({1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("cyclic U2 by Fourier and by cubes") {
  CHECK(gowers_u2_cyclic(FiniteSignal::real(std::vector<double>(16, 1.0))) == doctest::Approx(1.0));
  std::vector<cd> chi(24);
  for (std::size_t x = 0; x < chi.size(); ++x) chi[x] = std::polar(1.0, 2 * std::numbers::pi * 5.0 * static_cast<double>(x) / 24);
  CHECK(gowers_u2_cyclic(FiniteSignal(chi)) == doctest::Approx(1.0));
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) {
    auto f = random_signal(rng, 1 + rng() % 64);
    REQUIRE(std::abs(gowers_u2_cyclic(FiniteSignal(f)) - gowers_u2_cyclic_cubes(FiniteSignal(f))) < 1e-9);
  }
  std::vector<double> pm(128);
  for (auto& x : pm) x = (rng() >> 63) ? 1.0 : -1.0;
  CHECK(std::abs(gowers_u2_cyclic(FiniteSignal::real(pm)) - gowers_u2_cyclic_cubes(FiniteSignal::real(pm))) < 1e-9);
}

TEST_CASE("uniformity probes") {
  CHECK(uniformity_probe(testing::load("constant"), "0", 2, 64).value == 0.0);
  Dfao tm = testing::load("thue_morse");
  const double v64 = uniformity_probe(tm, "1", 2, 64).value;
  const double v256 = uniformity_probe(tm, "1", 2, 256).value;
  CHECK(v256 < v64);
  // Balanced indicator of n mod 2 is +-1/2, so every cube product is 1/16.
  CHECK(uniformity_probe(testing::load("period2"), "1", 2, 256).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(uniformity_probe(testing::load("period2"), "1", 3, 64).value == doctest::Approx(0.5).epsilon(1e-12));
}
