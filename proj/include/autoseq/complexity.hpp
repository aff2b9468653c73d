#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/kernels.hpp"

namespace autoseq {

enum class ComplexityKind { kOrdinary, kArithmetic, kPolynomial };
std::string to_string(ComplexityKind kind);

// Observed word counts per length. Counts are lower bounds on the true
// complexity unless marked exact.
struct ComplexityProfile {
  ComplexityKind kind = ComplexityKind::kOrdinary;
  int degree = 0;               // polynomial kind only
  std::uint64_t budget_n = 0;   // prefix length N
  std::uint64_t budget_m = 0;   // M_max, or the coefficient bound
  std::map<int, std::uint64_t> entries;
  std::map<int, bool> exact;    // true where the count hit the ceiling
  std::map<int, std::uint64_t> skipped;  // polynomial kind only

  std::string csv() const;   // ell,count,budget_N,budget_M,exact_or_lower
  std::string json() const;
};

// P(n) = sum_j coeffs[j] * binom(n, j).
struct IntegerPolynomial {
  std::vector<std::int64_t> coeffs;

  int degree() const;
  // Exact value; throws std::overflow_error outside the int64 range.
  std::int64_t operator()(std::int64_t n) const;
  // Monomial coefficients as doubles, lowest first.
  std::vector<double> monomial() const;
};

// Distinct windows of a(0..N) for ell = 1..ell_max.
ComplexityProfile subword_complexity_profile(const Dfao& a, int ell_max, std::uint64_t n);

// Closed form of the Thue-Morse factor complexity; ell = 1 gives 2.
std::uint64_t thue_morse_reference(int ell);

struct WordCount {
  std::uint64_t count = 0;
  bool saturated = false;  // reached (#attained labels)^ell
  std::uint64_t skipped = 0;
  std::vector<kernels::WordHit> witnesses;  // filled on request
};

// Words (a(n + i m))_{i<ell} over 0 <= n < N, 1 <= m <= M_max.
WordCount ap_complexity(const Dfao& a, int ell, std::uint64_t n, std::uint64_t m_max, bool witnesses = false);
ComplexityProfile ap_complexity_profile(const Dfao& a, int ell_max, std::uint64_t n, std::uint64_t m_max);

// Words (a(P(i)))_{i<ell} over P of degree <= d with binomial-basis
// coefficients in [0, coeff_bound]. P with P(ell-1) beyond the evaluation
// range (or beyond max_range) is skipped and counted.
inline constexpr std::uint64_t kDefaultPolyRange = std::uint64_t{1} << 24;
WordCount poly_complexity(const Dfao& a, int ell, int d, std::uint64_t coeff_bound, bool witnesses = false,
                          std::uint64_t max_range = kDefaultPolyRange);
ComplexityProfile poly_complexity_profile(const Dfao& a, int ell_max, int d, std::uint64_t coeff_bound,
                                          std::uint64_t max_range = kDefaultPolyRange);

struct Frequency {
  std::uint64_t matches = 0;
  std::uint64_t denominator = 0;  // N^2
  double value() const { return denominator == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(denominator); }
};

// #{(n, m) in N_0^2 : n + (ell-1) m < N, a(n + i m) = x(i)} / N^2. The word
// is given as label strings. For ell = 1 the difference ranges over m < N.
Frequency ap_word_frequency(const Dfao& a, const std::vector<std::string>& word, std::uint64_t n);

struct BoundBudgets {
  std::uint64_t n = std::uint64_t{1} << 14;
  std::uint64_t m_max = 64;
  // Equal-budget chain check p <= p^AP <= p^{<=1} <= p^{<=2}: prefix of
  // length chain_n, progressions with n < chain_n and m <= chain_n, and
  // coefficients in [0, chain_n].
  std::uint64_t chain_n = 32;
  int chain_ell_max = 6;
};

struct BoundRow {
  int ell = 0;
  std::uint64_t observed = 0;
  double r_pow = 0;         // r^ell
  double excess = 0;        // (log observed - ell log r) / ell
  double growth = 0;        // log(observed) / ell
  bool lower_bound_met = false;  // observed >= r^ell
  bool sanity_ok = true;         // observed <= (#labels)^ell
};

struct ChainRow {
  int ell = 0;
  std::uint64_t ordinary = 0, arithmetic = 0, poly1 = 0, poly2 = 0;
  bool monotone = false;
};

struct BoundReport {
  int r = 0;
  int attained_labels = 0;
  BoundBudgets budgets;
  std::vector<BoundRow> rows;
  std::vector<ChainRow> chain;
  bool sanity_ok = true;   // no count above the label ceiling
  bool chain_ok = true;

  std::string csv() const;
  std::string json() const;
};

// Observed p^AP(ell) for each ell against r^ell, plus the equal-budget chain.
BoundReport verify_theorem_bounds(const Dfao& a, const std::vector<int>& ells, const BoundBudgets& budgets = {});

}  // namespace autoseq
