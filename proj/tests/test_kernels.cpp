#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include <map>
#include <random>
#include <set>

#include "autoseq/kernels.hpp"

using namespace autoseq;
using namespace autoseq::kernels;

namespace {

std::vector<int> random_sequence(std::mt19937_64& rng, std::size_t n, int labels) {
  std::vector<int> s(n);
  for (auto& x : s) x = static_cast<int>(rng() % static_cast<unsigned>(labels));
  return s;
}

void same(const WordCollection& a, const WordCollection& b) {
  REQUIRE(a.words.size() == b.words.size());
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    REQUIRE(a.words[i].word == b.words[i].word);
    REQUIRE(a.words[i].where == b.words[i].where);
  }
  REQUIRE(a.examined == b.examined);
  REQUIRE(a.skipped == b.skipped);
  REQUIRE(a.saturated == b.saturated);
}

const int kThreadCounts[] = {1, 2, 3, 5};

}  // namespace

TEST_CASE("distinct windows") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const int L = 1 + static_cast<int>(rng() % 4);
    auto seq = random_sequence(rng, 1 + rng() % 700, L);
    auto serial = distinct_windows_serial(seq, L, 14);
    for (int th : kThreadCounts) {
      omp_set_num_threads(th);
      REQUIRE(distinct_windows(seq, L, 14) == serial);
    }
    for (int ell = 1; ell <= 14; ++ell) {
      std::set<std::vector<int>> words;
      for (std::size_t n = 0; n + static_cast<std::size_t>(ell) <= seq.size(); ++n) {
        words.emplace(seq.begin() + static_cast<long>(n), seq.begin() + static_cast<long>(n) + ell);
      }
      REQUIRE(serial[static_cast<std::size_t>(ell - 1)] == words.size());
    }
  }
  CHECK_THROWS_AS(distinct_windows(std::vector<int>{0, 3}, 2, 2), std::invalid_argument);
}

TEST_CASE("progression words: first occurrences and early stop") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 40; ++t) {
    const int L = 2 + static_cast<int>(rng() % 2);
    const int ell = 1 + static_cast<int>(rng() % 6);
    const std::uint64_t n_limit = 1 + rng() % 300, m_max = 1 + rng() % 40;
    auto seq = random_sequence(rng, n_limit + static_cast<std::uint64_t>(ell - 1) * m_max, L);
    const std::uint64_t ceiling = (t % 3 == 0) ? 0 : 1 + rng() % 40;
    auto serial = ap_words_serial(seq, L, ell, n_limit, m_max, ceiling);
    for (int th : kThreadCounts) {
      omp_set_num_threads(th);
      same(ap_words(seq, L, ell, n_limit, m_max, ceiling), serial);
    }
    // Naive: first occurrence in (m outer, n inner) order.
    std::map<std::vector<int>, std::vector<std::uint64_t>> first;
    std::uint64_t examined = 0;
    bool stop = false;
    for (std::uint64_t m = 1; m <= m_max && !stop; ++m) {
      for (std::uint64_t n = 0; n < n_limit && !stop; ++n) {
        ++examined;
        std::vector<int> w;
        for (int i = 0; i < ell; ++i) w.push_back(seq[n + static_cast<std::uint64_t>(i) * m]);
        first.emplace(w, std::vector<std::uint64_t>{n, m});
        if (ceiling != 0 && first.size() == ceiling) stop = true;
      }
    }
    REQUIRE(serial.words.size() == first.size());
    REQUIRE(serial.saturated == stop);
    REQUIRE(serial.examined == examined);
    std::size_t i = 0;
    for (const auto& [w, where] : first) {
      REQUIRE(serial.words[i].word == w);
      REQUIRE(serial.words[i].where == where);
      ++i;
    }
  }
}

TEST_CASE("polynomial words: serial and parallel agree") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 30; ++t) {
    const int L = 2 + static_cast<int>(rng() % 2);
    const int ell = 1 + static_cast<int>(rng() % 5);
    const int degree = 1 + static_cast<int>(rng() % 3);
    const std::uint64_t bound = 2 + rng() % 18;
    auto seq = random_sequence(rng, 50 + rng() % 400, L);
    const std::uint64_t ceiling = (t % 2 == 0) ? 0 : 1 + rng() % 60;
    auto serial = poly_words_serial(seq, L, ell, degree, bound, ceiling);
    for (int th : kThreadCounts) {
      omp_set_num_threads(th);
      same(poly_words(seq, L, ell, degree, bound, ceiling), serial);
    }
    if (ceiling == 0) {
      std::uint64_t total = 1;
      for (int j = 0; j <= degree; ++j) total *= bound + 1;
      REQUIRE(serial.examined == total);
    }
  }
}

TEST_CASE("progression matches") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 40; ++t) {
    auto seq = random_sequence(rng, 1 + rng() % 300, 2);
    const int ell = 1 + static_cast<int>(rng() % 4);
    auto word = random_sequence(rng, static_cast<std::size_t>(ell), 2);
    std::uint64_t naive = 0;
    const std::uint64_t N = seq.size();
    for (std::uint64_t n = 0; n < N; ++n) {
      for (std::uint64_t m = 0; m < N; ++m) {
        if (n + static_cast<std::uint64_t>(ell - 1) * m >= N) break;
        bool ok = true;
        for (int i = 0; i < ell && ok; ++i) ok = seq[n + static_cast<std::uint64_t>(i) * m] == word[static_cast<std::size_t>(i)];
        naive += ok ? 1 : 0;
      }
    }
    REQUIRE(progression_matches_serial(seq, word) == naive);
    for (int th : kThreadCounts) {
      omp_set_num_threads(th);
      REQUIRE(progression_matches(seq, word) == naive);
    }
  }
}

TEST_CASE("cube sums") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int d = 1; d <= 3; ++d) {
    for (int t = 0; t < 6; ++t) {
      std::vector<std::complex<double>> f(1 + rng() % (d == 3 ? 20 : 40));
      for (auto& x : f) x = {u(rng), u(rng)};
      auto serial = interval_cube_sum_serial(f, d);
      for (int th : kThreadCounts) {
        omp_set_num_threads(th);
        auto par = interval_cube_sum(f, d);
        REQUIRE(par.cubes == serial.cubes);
        REQUIRE(par.sum == serial.sum);
      }
    }
  }
  CHECK_THROWS_AS(interval_cube_sum(std::vector<std::complex<double>>(4), 4), std::invalid_argument);
}
