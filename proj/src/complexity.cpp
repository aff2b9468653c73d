#include "autoseq/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "autoseq/structure.hpp"
#include "json.hpp"

namespace autoseq {

namespace {

using ojson = nlohmann::ordered_json;
using u128 = unsigned __int128;

// base^e, or 0 when it exceeds 2^63.
std::uint64_t ceiling_or_zero(int base, int e) {
  u128 v = 1;
  for (int i = 0; i < e; ++i) {
    v *= static_cast<unsigned>(base);
    if (v > (u128{1} << 63)) return 0;
  }
  return static_cast<std::uint64_t>(v);
}

struct Prepared {
  Dfao automaton;
  int attained;
};

Prepared prepare(const Dfao& a) { return {normalize_leading_zeros(a), attained_label_count(a)}; }

std::uint64_t binom_sum(int ell, int d) {
  // sum_{j<=d} binom(ell-1, j), saturating.
  u128 total = 0, c = 1;
  const auto n = static_cast<u128>(ell - 1);
  for (int j = 0; j <= d; ++j) {
    if (static_cast<u128>(j) > n) break;
    if (j > 0) c = c * (n - static_cast<u128>(j) + 1) / static_cast<u128>(j);
    total += c;
    if (total > (u128{1} << 62)) return std::uint64_t{1} << 62;
  }
  return static_cast<std::uint64_t>(total);
}

WordCount to_count(kernels::WordCollection&& c, bool witnesses) {
  WordCount out;
  out.count = c.words.size();
  out.saturated = c.saturated;
  out.skipped = c.skipped;
  if (witnesses) out.witnesses = std::move(c.words);
  return out;
}

}  // namespace

std::string to_string(ComplexityKind kind) {
  switch (kind) {
    case ComplexityKind::kOrdinary:
      return "ordinary";
    case ComplexityKind::kArithmetic:
      return "arithmetic";
    case ComplexityKind::kPolynomial:
      break;
  }
  return "polynomial";
}

std::string ComplexityProfile::csv() const {
  std::ostringstream out;
  out << "ell,count,budget_N,budget_M,exact_or_lower\n";
  for (const auto& [ell, count] : entries) {
    out << ell << ',' << count << ',' << budget_n << ',' << budget_m << ',' << (exact.at(ell) ? "exact" : "lower")
        << '\n';
  }
  return out.str();
}

std::string ComplexityProfile::json() const {
  ojson j;
  j["kind"] = to_string(kind);
  if (kind == ComplexityKind::kPolynomial) j["degree"] = degree;
  j["budget_N"] = budget_n;
  j["budget_M"] = budget_m;
  j["entries"] = ojson::array();
  for (const auto& [ell, count] : entries) {
    ojson e;
    e["ell"] = ell;
    e["count"] = count;
    e["exact_or_lower"] = exact.at(ell) ? "exact" : "lower";
    if (kind == ComplexityKind::kPolynomial) e["skipped"] = skipped.at(ell);
    j["entries"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

int IntegerPolynomial::degree() const {
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    if (coeffs[j] != 0) return static_cast<int>(j);
  }
  return coeffs.empty() ? -1 : 0;
}

std::int64_t IntegerPolynomial::operator()(std::int64_t n) const {
  __int128 total = 0, c = 1;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) c = c * (static_cast<__int128>(n) - static_cast<__int128>(j) + 1) / static_cast<__int128>(j);
    if (c > (static_cast<__int128>(1) << 100) || c < -(static_cast<__int128>(1) << 100)) {
      throw std::overflow_error("polynomial value out of range");
    }
    total += c * coeffs[j];
    if (total > std::numeric_limits<std::int64_t>::max() || total < std::numeric_limits<std::int64_t>::min()) {
      throw std::overflow_error("polynomial value out of range");
    }
  }
  return static_cast<std::int64_t>(total);
}

std::vector<double> IntegerPolynomial::monomial() const {
  // binom(n, j) = n (n-1) ... (n-j+1) / j!, expanded one factor at a time.
  std::vector<double> out(coeffs.size(), 0.0);
  std::vector<double> basis{1.0};
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) {
      std::vector<double> next(basis.size() + 1, 0.0);
      const double shift = static_cast<double>(j) - 1.0;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i] / static_cast<double>(j);
        next[i] -= basis[i] * shift / static_cast<double>(j);
      }
      basis = std::move(next);
    }
    for (std::size_t i = 0; i < basis.size(); ++i) out[i] += static_cast<double>(coeffs[j]) * basis[i];
  }
  return out;
}

ComplexityProfile subword_complexity_profile(const Dfao& a, int ell_max, std::uint64_t n) {
  if (ell_max < 1) throw std::invalid_argument("ell_max must be positive");
  if (n < static_cast<std::uint64_t>(ell_max)) throw std::invalid_argument("need N >= ell_max");
  auto p = prepare(a);
  auto seq = generate_prefix(p.automaton, static_cast<std::size_t>(n));
  auto counts = kernels::distinct_windows(seq, p.automaton.num_labels(), ell_max);
  ComplexityProfile prof;
  prof.kind = ComplexityKind::kOrdinary;
  prof.budget_n = n;
  for (int ell = 1; ell <= ell_max; ++ell) {
    const auto c = counts[static_cast<std::size_t>(ell - 1)];
    prof.entries[ell] = c;
    prof.exact[ell] = c == ceiling_or_zero(p.attained, ell);
  }
  return prof;
}

std::uint64_t thue_morse_reference(int ell) {
  if (ell < 1) throw std::invalid_argument("length must be positive");
  if (ell == 1) return 2;
  // ell = 2^k + r with 1 <= r <= 2^k.
  std::uint64_t pk = 1;
  while (2 * pk < static_cast<std::uint64_t>(ell)) pk *= 2;
  const std::uint64_t r = static_cast<std::uint64_t>(ell) - pk;
  if (2 * r <= pk) return 3 * pk + 4 * (r - 1);
  return 4 * pk + 2 * (r - 1);
}

WordCount ap_complexity(const Dfao& a, int ell, std::uint64_t n, std::uint64_t m_max, bool witnesses) {
  if (ell < 1) throw std::invalid_argument("ell must be positive");
  if (m_max < 1) throw std::invalid_argument("M_max must be positive");
  auto p = prepare(a);
  const u128 len = static_cast<u128>(n) + static_cast<u128>(ell - 1) * m_max;
  if (len > (u128{1} << 32)) throw std::invalid_argument("progression budget too large");
  auto seq = generate_prefix(p.automaton, static_cast<std::size_t>(len));
  return to_count(kernels::ap_words(seq, p.automaton.num_labels(), ell, n, m_max, ceiling_or_zero(p.attained, ell)),
                  witnesses);
}

ComplexityProfile ap_complexity_profile(const Dfao& a, int ell_max, std::uint64_t n, std::uint64_t m_max) {
  ComplexityProfile prof;
  prof.kind = ComplexityKind::kArithmetic;
  prof.budget_n = n;
  prof.budget_m = m_max;
  for (int ell = 1; ell <= ell_max; ++ell) {
    auto c = ap_complexity(a, ell, n, m_max);
    prof.entries[ell] = c.count;
    prof.exact[ell] = c.saturated;
  }
  return prof;
}

WordCount poly_complexity(const Dfao& a, int ell, int d, std::uint64_t coeff_bound, bool witnesses,
                          std::uint64_t max_range) {
  if (ell < 1) throw std::invalid_argument("ell must be positive");
  if (d < 1) throw std::invalid_argument("degree must be at least 1");
  auto p = prepare(a);
  const u128 need = static_cast<u128>(coeff_bound) * binom_sum(ell, d) + 1;
  const auto range = static_cast<std::size_t>(std::min<u128>(need, max_range));
  auto seq = generate_prefix(p.automaton, range);
  return to_count(
      kernels::poly_words(seq, p.automaton.num_labels(), ell, d, coeff_bound, ceiling_or_zero(p.attained, ell)),
      witnesses);
}

ComplexityProfile poly_complexity_profile(const Dfao& a, int ell_max, int d, std::uint64_t coeff_bound,
                                          std::uint64_t max_range) {
  ComplexityProfile prof;
  prof.kind = ComplexityKind::kPolynomial;
  prof.degree = d;
  prof.budget_m = coeff_bound;
  for (int ell = 1; ell <= ell_max; ++ell) {
    auto c = poly_complexity(a, ell, d, coeff_bound, false, max_range);
    prof.entries[ell] = c.count;
    prof.exact[ell] = c.saturated;
    prof.skipped[ell] = c.skipped;
  }
  return prof;
}

Frequency ap_word_frequency(const Dfao& a, const std::vector<std::string>& word, std::uint64_t n) {
  if (word.empty()) throw std::invalid_argument("word must be nonempty");
  if (n > (std::uint64_t{1} << 31)) throw std::invalid_argument("N too large");
  Frequency f;
  f.denominator = n * n;
  auto p = prepare(a);
  std::vector<int> ids;
  for (const auto& label : word) {
    auto it = std::find(p.automaton.labels().begin(), p.automaton.labels().end(), label);
    if (it == p.automaton.labels().end()) return f;
    ids.push_back(static_cast<int>(it - p.automaton.labels().begin()));
  }
  auto seq = generate_prefix(p.automaton, static_cast<std::size_t>(n));
  f.matches = kernels::progression_matches(seq, ids);
  return f;
}

std::string BoundReport::csv() const {
  std::ostringstream out;
  out << "ell,observed,r_pow,excess,growth,lower_bound_met,sanity_ok\n";
  out.precision(12);
  for (const auto& row : rows) {
    out << row.ell << ',' << row.observed << ',' << row.r_pow << ',' << row.excess << ',' << row.growth << ','
        << (row.lower_bound_met ? 1 : 0) << ',' << (row.sanity_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string BoundReport::json() const {
  ojson j;
  j["r"] = r;
  j["attained_labels"] = attained_labels;
  j["budget_N"] = budgets.n;
  j["budget_M"] = budgets.m_max;
  j["rows"] = ojson::array();
  for (const auto& row : rows) {
    j["rows"].push_back({{"ell", row.ell},
                         {"observed", row.observed},
                         {"r_pow", row.r_pow},
                         {"excess", row.excess},
                         {"growth", row.growth},
                         {"lower_bound", row.lower_bound_met ? "met" : "budget-insufficient"},
                         {"sanity_ok", row.sanity_ok}});
  }
  j["chain_budget"] = budgets.chain_n;
  j["chain"] = ojson::array();
  for (const auto& c : chain) {
    j["chain"].push_back({{"ell", c.ell},
                          {"ordinary", c.ordinary},
                          {"arithmetic", c.arithmetic},
                          {"poly1", c.poly1},
                          {"poly2", c.poly2},
                          {"monotone", c.monotone}});
  }
  j["sanity_ok"] = sanity_ok;
  j["chain_ok"] = chain_ok;
  return j.dump(2) + "\n";
}

BoundReport verify_theorem_bounds(const Dfao& a, const std::vector<int>& ells, const BoundBudgets& budgets) {
  BoundReport rep;
  rep.budgets = budgets;
  rep.r = effective_alphabet_size(a).r;
  rep.attained_labels = attained_label_count(a);
  for (int ell : ells) {
    if (ell < 1) throw std::invalid_argument("ell must be positive");
    BoundRow row;
    row.ell = ell;
    row.observed = ap_complexity(a, ell, budgets.n, budgets.m_max).count;
    row.r_pow = std::pow(static_cast<double>(rep.r), ell);
    const double lo = std::log(static_cast<double>(row.observed));
    row.growth = lo / ell;
    row.excess = (lo - ell * std::log(static_cast<double>(rep.r))) / ell;
    row.lower_bound_met = static_cast<double>(row.observed) >= row.r_pow;
    const std::uint64_t cap = ceiling_or_zero(rep.attained_labels, ell);
    row.sanity_ok = cap == 0 || row.observed <= cap;
    rep.sanity_ok = rep.sanity_ok && row.sanity_ok;
    rep.rows.push_back(row);
  }

  auto p = prepare(a);
  const std::uint64_t B = budgets.chain_n;
  for (int ell = 1; ell <= budgets.chain_ell_max; ++ell) {
    ChainRow c;
    c.ell = ell;
    auto seq = generate_prefix(p.automaton, static_cast<std::size_t>(B + static_cast<std::uint64_t>(ell - 1)));
    c.ordinary = kernels::distinct_windows(seq, p.automaton.num_labels(), ell).back();
    c.arithmetic = ap_complexity(a, ell, B, B).count;
    c.poly1 = poly_complexity(a, ell, 1, B).count;
    c.poly2 = poly_complexity(a, ell, 2, B).count;
    c.monotone = c.ordinary <= c.arithmetic && c.arithmetic <= c.poly1 && c.poly1 <= c.poly2;
    rep.chain_ok = rep.chain_ok && c.monotone;
    rep.chain.push_back(c);
  }
  return rep;
}

}  // namespace autoseq
