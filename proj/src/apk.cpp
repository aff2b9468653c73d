#include "autoseq/apk.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include <omp.h>

#include "autoseq/structure.hpp"

namespace autoseq {

namespace {

using u128 = unsigned __int128;

std::int64_t mod_floor(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Inverse of a modulo m (gcd(a, m) = 1), m >= 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t g = m, x = 0, x1 = 1, r = mod_floor(a, m);
  while (r != 0) {
    std::int64_t q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::logic_error("modular inverse does not exist");
  return mod_floor(x, m);
}

// x = a (mod m), x = b (mod n) -> (x mod lcm, lcm), or nullopt.
std::optional<std::pair<std::int64_t, std::int64_t>> crt(std::int64_t a, std::int64_t m, std::int64_t b,
                                                         std::int64_t n) {
  const std::int64_t g = std::gcd(m, n);
  if (mod_floor(b - a, g) != 0) return std::nullopt;
  const std::int64_t l = m / g * n;
  if (l > std::numeric_limits<int>::max()) throw std::overflow_error("combined modulus too large");
  const std::int64_t step = mod_floor((b - a) / g, n / g) * mod_inverse(m / g, n / g) % (n / g);
  return std::make_pair(mod_floor(a + m * step, l), l);
}

u128 pow128(std::uint64_t k, std::size_t e) {
  u128 v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= k;
  return v;
}

u128 word_value128(const DigitWord& w, int k) {
  u128 v = 0;
  for (int d : w) v = v * static_cast<unsigned>(k) + static_cast<unsigned>(d);
  return v;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty() || s.size() > 9) return false;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

}  // namespace

ApkSet::ApkSet(int base, DigitWord prefix, DigitWord suffix, int len_mod, int len_class, int res_mod, int res_class)
    : base_(base),
      prefix_(std::move(prefix)),
      suffix_(std::move(suffix)),
      len_mod_(len_mod),
      len_class_(len_class),
      res_mod_(res_mod),
      res_class_(res_class) {
  if (base_ < 2) throw std::invalid_argument("base must be at least 2");
  if (!prefix_.valid_for(base_) || !suffix_.valid_for(base_)) throw std::invalid_argument("digit out of range");
  if (prefix_.has_leading_zero()) throw std::invalid_argument("prefix may not begin with 0");
  if (len_mod_ < 1 || len_class_ < 0 || len_class_ >= len_mod_) throw std::invalid_argument("bad length class");
  if (res_mod_ < 1 || res_class_ < 0 || res_class_ >= res_mod_) throw std::invalid_argument("bad residue class");
  if (std::gcd(res_mod_, base_) != 1) throw std::invalid_argument("residue modulus must be coprime to the base");
}

ApkSet ApkSet::parse(std::string_view literal, int base) {
  DigitWord u, v;
  int m = 1, l = 0, q = 1, c = 0;
  std::size_t pos = 0;
  while (pos < literal.size()) {
    auto comma = literal.find(',', pos);
    if (comma == std::string_view::npos) comma = literal.size();
    std::string_view part = literal.substr(pos, comma - pos);
    pos = comma + 1;
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value in '" + std::string(part) + "'");
    auto key = part.substr(0, eq);
    auto value = part.substr(eq + 1);
    if (key == "u") {
      u = DigitWord::parse(value);
    } else if (key == "v") {
      v = DigitWord::parse(value);
    } else if (key == "len" || key == "res") {
      auto pct = value.find('%');
      int a = 0, b = 0;
      if (pct == std::string_view::npos || !parse_int(value.substr(0, pct), a) ||
          !parse_int(value.substr(pct + 1), b)) {
        throw std::invalid_argument("expected <class>%<modulus> in '" + std::string(part) + "'");
      }
      (key == "len" ? l : c) = a;
      (key == "len" ? m : q) = b;
    } else {
      throw std::invalid_argument("unknown key '" + std::string(key) + "'");
    }
  }
  return ApkSet(base, std::move(u), std::move(v), m, l, q, c);
}

bool ApkSet::contains(std::uint64_t n) const {
  if (n % static_cast<std::uint64_t>(res_mod_) != static_cast<std::uint64_t>(res_class_)) return false;
  DigitWord e = DigitWord::expansion(n, base_);
  if (static_cast<int>(e.size() % static_cast<std::size_t>(len_mod_)) != len_class_) return false;
  return prefix_.is_prefix_of(e) && suffix_.is_suffix_of(e);
}

std::string ApkSet::str() const {
  return "u=" + prefix_.str() + ",v=" + suffix_.str() + ",len=" + std::to_string(len_class_) + "%" +
         std::to_string(len_mod_) + ",res=" + std::to_string(res_class_) + "%" + std::to_string(res_mod_);
}

std::vector<std::uint64_t> enumerate_members(const ApkSet& set, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n == 0) return out;
  const int k = set.base();
  const auto& u = set.prefix();
  const auto& v = set.suffix();
  const std::uint64_t q = static_cast<std::uint64_t>(set.res_mod());
  const std::uint64_t c = static_cast<std::uint64_t>(set.res_class());
  const int max_len = expansion_length(n - 1, k);

  for (int len = 0; len <= max_len; ++len) {
    if (len % set.len_mod() != set.len_class()) continue;
    const auto L = static_cast<std::size_t>(len);
    if (len == 0) {
      if (u.empty() && v.empty() && c == 0) out.push_back(0);
      continue;
    }
    if (L < std::max(u.size(), v.size())) continue;
    if (L < u.size() + v.size()) {
      // Prefix and suffix overlap: the expansion is fully determined.
      std::vector<int> digits(u.begin(), u.end());
      for (std::size_t i = v.size() - (L - u.size()); i < v.size(); ++i) digits.push_back(v[i]);
      DigitWord w(std::move(digits));
      if (w[0] == 0 || !v.is_suffix_of(w)) continue;
      std::uint64_t value = w.value(k);
      if (value < n && value % q == c) out.push_back(value);
      continue;
    }
    // n = [u] k^(L-|u|) + mid k^|v| + [v] with mid of exactly `free` digits.
    const std::size_t free = L - u.size() - v.size();
    const u128 top = pow128(static_cast<std::uint64_t>(k), free);
    u128 lo = 0;
    if (u.empty()) {
      if (free > 0) {
        lo = top / static_cast<unsigned>(k);
      } else if (v[0] == 0) {
        continue;
      }
    }
    const u128 step = pow128(static_cast<std::uint64_t>(k), v.size());
    const u128 fixed = word_value128(u, k) * pow128(static_cast<std::uint64_t>(k), L - u.size()) + word_value128(v, k);
    if (fixed >= n) continue;
    // mid = (c - fixed) * step^-1 (mod q)
    const auto step_mod = static_cast<std::int64_t>(step % q);
    const auto need = static_cast<std::int64_t>((c + q - static_cast<std::uint64_t>(fixed % q)) % q);
    const auto want = static_cast<u128>(
        (static_cast<__int128>(need) * mod_inverse(step_mod, static_cast<std::int64_t>(q))) % static_cast<__int128>(q));
    u128 mid = lo + ((want + q - static_cast<std::uint64_t>(lo % q)) % q);
    for (; mid < top; mid += q) {
      u128 value = fixed + mid * step;
      if (value >= n) break;
      out.push_back(static_cast<std::uint64_t>(value));
    }
  }
  return out;
}

std::optional<ApkSet> refine(const ApkSet& set, const DigitWord& prefix, const DigitWord& suffix, int len_mod,
                             int len_class, int res_mod, int res_class) {
  ApkSet other(set.base(), prefix, suffix, len_mod, len_class, res_mod, res_class);
  return intersect(set, other);
}

std::optional<ApkSet> intersect(const ApkSet& a, const ApkSet& b) {
  if (a.base() != b.base()) throw std::invalid_argument("cannot intersect sets over different bases");
  const DigitWord* u = nullptr;
  if (a.prefix().is_prefix_of(b.prefix())) {
    u = &b.prefix();
  } else if (b.prefix().is_prefix_of(a.prefix())) {
    u = &a.prefix();
  } else {
    return std::nullopt;
  }
  const DigitWord* v = nullptr;
  if (a.suffix().is_suffix_of(b.suffix())) {
    v = &b.suffix();
  } else if (b.suffix().is_suffix_of(a.suffix())) {
    v = &a.suffix();
  } else {
    return std::nullopt;
  }
  auto len = crt(a.len_class(), a.len_mod(), b.len_class(), b.len_mod());
  auto res = crt(a.res_class(), a.res_mod(), b.res_class(), b.res_mod());
  if (!len || !res) return std::nullopt;
  return ApkSet(a.base(), *u, *v, static_cast<int>(len->second), static_cast<int>(len->first),
                static_cast<int>(res->second), static_cast<int>(res->first));
}

std::set<std::string> value_set(const Dfao& a, const ApkSet& set, std::uint64_t limit) {
  if (a.base() != set.base()) throw std::invalid_argument("automaton and set use different bases");
  std::vector<bool> seen(static_cast<std::size_t>(a.num_labels()), false);
  for (auto n : enumerate_members(set, limit)) seen[static_cast<std::size_t>(evaluate(a, n))] = true;
  std::set<std::string> out;
  for (int i = 0; i < a.num_labels(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) out.insert(a.label(i));
  }
  return out;
}

double log_density_estimate(const Dfao& a, std::string_view label, const ApkSet& set, std::uint64_t limit) {
  if (a.base() != set.base()) throw std::invalid_argument("automaton and set use different bases");
  if (limit < 2) throw std::invalid_argument("log density needs N >= 2");
  auto it = std::find(a.labels().begin(), a.labels().end(), label);
  if (it == a.labels().end()) return 0.0;
  const int target = static_cast<int>(it - a.labels().begin());
  long double sum = 0;
  for (auto n : enumerate_members(set, limit)) {
    if (evaluate(a, n) == target) sum += 1.0L / static_cast<long double>(n + 1);
  }
  return static_cast<double>(sum / std::log(static_cast<long double>(limit)));
}

// ---------------------------------------------------------------------------
// Empirical bracket

namespace {

void check_options(const BracketOptions& opt) {
  if (opt.depth < 1 || opt.candidate_depth < 0) throw std::invalid_argument("need depth >= 1 and candidate_depth >= 0");
  if (opt.min_members_lo < 1 || opt.min_members_hi < opt.min_members_lo) {
    throw std::invalid_argument("need 1 <= min_members_lo <= min_members_hi");
  }
}

struct CandidateSpace {
  int base;
  int depth;                  // longest prefix or suffix
  std::vector<int> len_mods;  // 1..mod_depth
  std::vector<int> res_mods;  // 1..mod_depth coprime to base

  CandidateSpace(int k, int d, int mod_depth) : base(k), depth(d) {
    for (int m = 1; m <= mod_depth; ++m) len_mods.push_back(m);
    for (int q = 1; q <= mod_depth; ++q) {
      if (std::gcd(q, k) == 1) res_mods.push_back(q);
    }
  }

  // All words of length <= depth; prefixes exclude a leading zero.
  std::vector<DigitWord> words(bool prefixes) const {
    std::vector<DigitWord> out{DigitWord()};
    std::vector<DigitWord> layer{DigitWord()};
    for (int len = 1; len <= depth; ++len) {
      std::vector<DigitWord> next;
      for (const auto& w : layer) {
        for (int d = 0; d < base; ++d) {
          if (prefixes && w.empty() && d == 0) continue;
          next.push_back(w.concat(DigitWord{d}));
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  std::vector<ApkSet> all_sets() const {
    std::vector<ApkSet> out;
    auto us = words(true);
    auto vs = words(false);
    for (const auto& u : us) {
      for (const auto& v : vs) {
        for (int m : len_mods) {
          for (int l = 0; l < m; ++l) {
            for (int q : res_mods) {
              for (int c = 0; c < q; ++c) out.emplace_back(base, u, v, m, l, q, c);
            }
          }
        }
      }
    }
    return out;
  }
};

// Moduli reachable as lcm of two candidate moduli, with offsets into a flat
// (modulus, class) index.
struct ModIndex {
  std::vector<int> moduli;
  std::vector<int> offset;  // by modulus value, -1 if absent
  int total = 0;

  explicit ModIndex(const std::vector<int>& base_moduli) {
    int top = 1;
    for (int a : base_moduli) {
      for (int b : base_moduli) top = std::max(top, std::lcm(a, b));
    }
    offset.assign(static_cast<std::size_t>(top) + 1, -1);
    for (int a : base_moduli) {
      for (int b : base_moduli) {
        int l = std::lcm(a, b);
        if (offset[static_cast<std::size_t>(l)] < 0) {
          offset[static_cast<std::size_t>(l)] = 0;
          moduli.push_back(l);
        }
      }
    }
    std::sort(moduli.begin(), moduli.end());
    for (int l : moduli) {
      offset[static_cast<std::size_t>(l)] = total;
      total += l;
    }
  }
  int at(int modulus, int cls) const { return offset[static_cast<std::size_t>(modulus)] + cls; }
};

struct Cell {
  std::uint64_t mask = 0;
  std::uint32_t count = 0;
};

constexpr std::uint8_t kNone = 0xff;

}  // namespace

EmpiricalBracket empirical_effective_alphabet(const Dfao& a, const BracketOptions& opt) {
  check_options(opt);
  if (a.num_labels() > 64) throw std::invalid_argument("bracket search supports at most 64 labels");
  const int k = a.base();
  const int W = opt.candidate_depth + opt.depth;  // longest refinement word
  const CandidateSpace space(k, W, opt.depth);
  const CandidateSpace outer(k, opt.candidate_depth, opt.depth);
  const ModIndex lm(space.len_mods);
  const ModIndex qm(space.res_mods);

  // u is identified by its value (no leading zero), v by
  // (k^|v| - 1)/(k - 1) + [v].
  const std::uint64_t u_count = checked_pow(static_cast<std::uint64_t>(k), W);
  const std::uint64_t v_count = (checked_pow(static_cast<std::uint64_t>(k), W + 1) - 1) / static_cast<std::uint64_t>(k - 1);
  const std::uint64_t inner = v_count * static_cast<std::uint64_t>(lm.total) * static_cast<std::uint64_t>(qm.total);
  const std::uint64_t entries = u_count * inner;
  if (entries > opt.max_table_entries) {
    throw BudgetExceeded("bracket table needs " + std::to_string(entries) + " entries");
  }
  const auto mods = static_cast<std::uint64_t>(lm.total) * static_cast<std::uint64_t>(qm.total);
  auto key = [&](std::uint64_t uid, std::uint64_t vid, int lmo, int qmo) {
    return uid * inner + vid * mods + static_cast<std::uint64_t>(lmo) * static_cast<std::uint64_t>(qm.total) +
           static_cast<std::uint64_t>(qmo);
  };
  std::vector<std::uint64_t> pow_k(static_cast<std::size_t>(W) + 2, 1);
  for (std::size_t i = 1; i < pow_k.size(); ++i) pow_k[i] = pow_k[i - 1] * static_cast<std::uint64_t>(k);
  auto v_base = [&](std::size_t len) { return (pow_k[len] - 1) / static_cast<std::uint64_t>(k - 1); };

  auto labels = generate_prefix(normalize_leading_zeros(a), static_cast<std::size_t>(opt.limit));
  const auto N = static_cast<std::int64_t>(opt.limit);
  std::vector<Cell> table(static_cast<std::size_t>(entries));

#pragma omp parallel
  {
    const bool shared = omp_get_num_threads() > 1;
    std::vector<int> digits;
    std::vector<std::uint64_t> offsets;
#pragma omp for schedule(static)
    for (std::int64_t ni = 0; ni < N; ++ni) {
      const auto n = static_cast<std::uint64_t>(ni);
      digits.clear();
      for (std::uint64_t x = n; x > 0; x /= static_cast<std::uint64_t>(k)) digits.push_back(static_cast<int>(x % static_cast<std::uint64_t>(k)));
      std::reverse(digits.begin(), digits.end());
      const std::size_t L = digits.size();
      const std::size_t reach = std::min<std::size_t>(L, static_cast<std::size_t>(W));
      const std::uint64_t bit = std::uint64_t{1} << labels[static_cast<std::size_t>(n)];
      offsets.clear();
      for (int mod : lm.moduli) {
        const int lmo = lm.at(mod, static_cast<int>(L % static_cast<std::size_t>(mod)));
        for (int q : qm.moduli) offsets.push_back(key(0, 0, lmo, qm.at(q, static_cast<int>(n % static_cast<std::uint64_t>(q)))));
      }
      std::uint64_t uid = 0;
      for (std::size_t ul = 0; ul <= reach; ++ul) {
        if (ul > 0) uid = uid * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(digits[ul - 1]);
        for (std::size_t vl = 0; vl <= reach; ++vl) {
          Cell* row = table.data() + key(uid, v_base(vl) + n % pow_k[vl], 0, 0);
          for (std::uint64_t off : offsets) {
            Cell& cell = row[off];
            if (shared) {
              std::atomic_ref<std::uint32_t>(cell.count).fetch_add(1, std::memory_order_relaxed);
              std::atomic_ref<std::uint64_t>(cell.mask).fetch_or(bit, std::memory_order_relaxed);
            } else {
              ++cell.count;
              cell.mask |= bit;
            }
          }
        }
      }
    }
  }

  // best[x] = least value count over the counted cells whose words extend
  // those of x (same moduli classes); kNone if there is none.
  const auto T_lo = static_cast<std::uint32_t>(opt.min_members_lo);
  const auto T_hi = static_cast<std::uint32_t>(opt.min_members_hi);
  std::vector<std::uint8_t> best_lo(table.size()), best_hi(table.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(table.size()); ++i) {
    const Cell& c = table[static_cast<std::size_t>(i)];
    const auto values = static_cast<std::uint8_t>(std::popcount(c.mask));
    best_lo[static_cast<std::size_t>(i)] = c.count >= T_lo ? values : kNone;
    best_hi[static_cast<std::size_t>(i)] = c.count >= T_hi ? values : kNone;
  }
  auto absorb = [&](std::uint64_t to, std::uint64_t from, std::uint64_t len) {
    for (std::uint64_t j = 0; j < len; ++j) {
      best_lo[to + j] = std::min(best_lo[to + j], best_lo[from + j]);
      best_hi[to + j] = std::min(best_hi[to + j], best_hi[from + j]);
    }
  };
  // Prefix extensions: the children of u are u d, or 1..k-1 for the empty
  // word; children have larger ids, so a descending sweep sees them first.
  for (std::uint64_t uid = u_count; uid-- > 0;) {
    const std::uint64_t first = uid == 0 ? 1 : uid * static_cast<std::uint64_t>(k);
    const std::uint64_t last = uid * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(k);
    if (first >= u_count) continue;
    for (std::uint64_t child = first; child < last; ++child) absorb(uid * inner, child * inner, inner);
  }
  // Suffix extensions: the children of v are d v, again with larger ids.
#pragma omp parallel for schedule(static)
  for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(u_count); ++ui) {
    const auto uid = static_cast<std::uint64_t>(ui);
    for (std::size_t len = static_cast<std::size_t>(W); len-- > 0;) {
      for (std::uint64_t val = 0; val < pow_k[len]; ++val) {
        const std::uint64_t vid = v_base(len) + val;
        for (std::uint64_t d = 0; d < static_cast<std::uint64_t>(k); ++d) {
          const std::uint64_t child = v_base(len + 1) + d * pow_k[len] + val;
          absorb(uid * inner + vid * mods, uid * inner + child * mods, mods);
        }
      }
    }
  }

  // Candidates in the canonical order of CandidateSpace::all_sets().
  const auto candidates = outer.all_sets();
  std::vector<int> score_lo(candidates.size(), -1), score_hi(candidates.size(), -1);

  auto uid_of = [&](const DigitWord& u) { return u.empty() ? 0 : u.value(k); };
  auto vid_of = [&](const DigitWord& v) { return v_base(v.size()) + v.value(k); };

#pragma omp parallel for schedule(static)
  for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(candidates.size()); ++pi) {
    const ApkSet& P = candidates[static_cast<std::size_t>(pi)];
    const std::uint64_t uid = uid_of(P.prefix());
    const std::uint64_t vid = vid_of(P.suffix());
    const Cell& own = table[key(uid, vid, lm.at(P.len_mod(), P.len_class()), qm.at(P.res_mod(), P.res_class()))];
    if (own.count < T_hi) continue;
    std::uint8_t lo = kNone, hi = kNone;
    for (int m2 : space.len_mods) {
      const int lmod = std::lcm(P.len_mod(), m2);
      for (int lc = P.len_class(); lc < lmod; lc += P.len_mod()) {
        for (int q2 : space.res_mods) {
          const int qmod = std::lcm(P.res_mod(), q2);
          for (int qc = P.res_class(); qc < qmod; qc += P.res_mod()) {
            const std::uint64_t at = key(uid, vid, lm.at(lmod, lc), qm.at(qmod, qc));
            lo = std::min(lo, best_lo[at]);
            hi = std::min(hi, best_hi[at]);
          }
        }
      }
    }
    score_lo[static_cast<std::size_t>(pi)] = lo;
    score_hi[static_cast<std::size_t>(pi)] = hi;
  }

  EmpiricalBracket out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (score_hi[i] < 0) continue;
    ++out.candidates;
    if (score_lo[i] > out.r_lo) {
      out.r_lo = score_lo[i];
      out.best_lo = candidates[i];
    }
    if (score_hi[i] > out.r_hi) {
      out.r_hi = score_hi[i];
      out.best_hi = candidates[i];
    }
  }
  return out;
}

EmpiricalBracket empirical_effective_alphabet_reference(const Dfao& a, const BracketOptions& opt) {
  check_options(opt);
  const CandidateSpace space(a.base(), opt.candidate_depth + opt.depth, opt.depth);
  const auto candidates = CandidateSpace(a.base(), opt.candidate_depth, opt.depth).all_sets();
  const auto blocks = space.all_sets();
  auto labels = generate_prefix(normalize_leading_zeros(a), static_cast<std::size_t>(opt.limit));
  auto stats = [&](const ApkSet& s) {
    auto members = enumerate_members(s, opt.limit);
    std::set<int> values;
    for (auto n : members) values.insert(labels[static_cast<std::size_t>(n)]);
    return std::make_pair(members.size(), static_cast<int>(values.size()));
  };
  const auto T_lo = static_cast<std::size_t>(opt.min_members_lo);
  const auto T_hi = static_cast<std::size_t>(opt.min_members_hi);

  EmpiricalBracket out;
  for (const auto& P : candidates) {
    auto [count, values] = stats(P);
    if (count < T_hi) continue;
    ++out.candidates;
    int best_lo = values, best_hi = values;
    for (const auto& B : blocks) {
      auto Q = intersect(P, B);
      if (!Q) continue;
      auto [qc, qv] = stats(*Q);
      if (qc >= T_lo) best_lo = std::min(best_lo, qv);
      if (qc >= T_hi) best_hi = std::min(best_hi, qv);
    }
    if (best_lo > out.r_lo) {
      out.r_lo = best_lo;
      out.best_lo = P;
    }
    if (best_hi > out.r_hi) {
      out.r_hi = best_hi;
      out.best_hi = P;
    }
  }
  return out;
}

std::string to_string(MascVerdict v) {
  switch (v) {
    case MascVerdict::kMaximal:
      return "Maximal";
    case MascVerdict::kNotMaximal:
      return "NotMaximal";
    case MascVerdict::kInconclusive:
      break;
  }
  return "Inconclusive";
}

MascResult masc_check(const Dfao& a, const BracketOptions& options) {
  MascResult out;
  out.attained_labels = attained_label_count(a);
  try {
    out.evidence = empirical_effective_alphabet(a, options);
  } catch (const BudgetExceeded& e) {
    out.note = std::string("empirical bracket skipped: ") + e.what();
  }
  try {
    auto eff = effective_alphabet_size(a);
    out.structural_r = eff.r;
    out.verdict = eff.r == out.attained_labels ? MascVerdict::kMaximal : MascVerdict::kNotMaximal;
  } catch (const BudgetExceeded& e) {
    out.verdict = MascVerdict::kInconclusive;
    out.note += (out.note.empty() ? "" : "; ") + std::string("structural analysis: ") + e.what();
  }
  return out;
}

}  // namespace autoseq
