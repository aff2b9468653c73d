#include "autoseq/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <omp.h>

namespace autoseq::kernels {

namespace {

using u128 = unsigned __int128;

void check_labels(std::span<const int> seq, int num_labels) {
  if (num_labels < 1) throw std::invalid_argument("need at least one label");
  for (int x : seq) {
    if (x < 0 || x >= num_labels) throw std::invalid_argument("label out of range");
  }
}

// Words of length ell packed into 64 bits when they fit, else into strings.
struct PackedCodec {
  using Key = std::uint64_t;
  int bits;
  int ell;
  Key encode(const int* w) const {
    Key k = 0;
    for (int i = 0; i < ell; ++i) k = (k << bits) | static_cast<Key>(w[i]);
    return k;
  }
  std::vector<int> decode(Key k) const {
    std::vector<int> w(static_cast<std::size_t>(ell));
    const Key mask = (Key{1} << bits) - 1;
    for (int i = ell - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(k & mask);
      k >>= bits;
    }
    return w;
  }
};

struct StringCodec {
  using Key = std::string;
  int ell;
  Key encode(const int* w) const {
    Key k(static_cast<std::size_t>(ell), '\0');
    for (int i = 0; i < ell; ++i) k[static_cast<std::size_t>(i)] = static_cast<char>(w[i]);
    return k;
  }
  std::vector<int> decode(const Key& k) const {
    std::vector<int> w;
    for (char c : k) w.push_back(static_cast<unsigned char>(c));
    return w;
  }
};

int label_bits(int num_labels) { return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(num_labels - 1)))); }

// One enumeration unit's words in first-occurrence order, with the in-unit
// position of each and the positions that were skipped.
template <class Key>
struct UnitResult {
  std::vector<std::pair<std::uint64_t, Key>> fresh;
  std::vector<std::uint64_t> skipped;
  std::uint64_t size = 0;
};

// Merges unit results in unit order into the global first-occurrence map.
// Returns true once the ceiling is reached.
template <class Key, class Where>
struct Merger {
  std::unordered_map<Key, std::vector<std::uint64_t>> seen;
  std::uint64_t ceiling;
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;
  bool saturated = false;
  Where where;  // (unit, position) -> witness

  bool absorb(std::uint64_t unit, const UnitResult<Key>& r) {
    for (const auto& [pos, key] : r.fresh) {
      if (seen.count(key)) continue;
      seen.emplace(key, where(unit, pos));
      if (ceiling != 0 && seen.size() >= ceiling) {
        examined += pos + 1;
        skipped += static_cast<std::uint64_t>(std::upper_bound(r.skipped.begin(), r.skipped.end(), pos) - r.skipped.begin());
        saturated = true;
        return true;
      }
    }
    examined += r.size;
    skipped += r.skipped.size();
    return false;
  }

  template <class Codec>
  WordCollection finish(const Codec& codec) {
    WordCollection out;
    out.examined = examined;
    out.skipped = skipped;
    out.saturated = saturated;
    out.words.reserve(seen.size());
    for (auto& [key, w] : seen) out.words.push_back({codec.decode(key), std::move(w)});
    std::sort(out.words.begin(), out.words.end(), [](const WordHit& a, const WordHit& b) { return a.word < b.word; });
    return out;
  }
};

template <class Codec>
UnitResult<typename Codec::Key> ap_unit(std::span<const int> seq, const Codec& codec, int ell, std::uint64_t n_limit,
                                        std::uint64_t m) {
  UnitResult<typename Codec::Key> r;
  r.size = n_limit;
  std::unordered_map<typename Codec::Key, bool> local;
  std::vector<int> buf(static_cast<std::size_t>(ell));
  for (std::uint64_t n = 0; n < n_limit; ++n) {
    for (int i = 0; i < ell; ++i) buf[static_cast<std::size_t>(i)] = seq[n + static_cast<std::uint64_t>(i) * m];
    auto key = codec.encode(buf.data());
    if (local.emplace(key, true).second) r.fresh.emplace_back(n, std::move(key));
  }
  return r;
}

template <class Codec>
WordCollection ap_run(std::span<const int> seq, const Codec& codec, int ell, std::uint64_t n_limit,
                      std::uint64_t m_max, std::uint64_t ceiling, bool parallel) {
  auto where = [](std::uint64_t m, std::uint64_t n) { return std::vector<std::uint64_t>{n, m}; };
  Merger<typename Codec::Key, decltype(where)> merger{{}, ceiling, 0, 0, false, where};
  const std::uint64_t batch = parallel ? static_cast<std::uint64_t>(std::max(1, omp_get_max_threads())) * 2 : 1;
  for (std::uint64_t m0 = 1; m0 <= m_max; m0 += batch) {
    const std::uint64_t m1 = std::min(m_max + 1, m0 + batch);
    std::vector<UnitResult<typename Codec::Key>> results(m1 - m0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t j = 0; j < static_cast<std::int64_t>(m1 - m0); ++j) {
        results[static_cast<std::size_t>(j)] = ap_unit(seq, codec, ell, n_limit, m0 + static_cast<std::uint64_t>(j));
      }
    } else {
      for (std::uint64_t j = 0; j < m1 - m0; ++j) results[j] = ap_unit(seq, codec, ell, n_limit, m0 + j);
    }
    bool done = false;
    for (std::uint64_t j = 0; j < m1 - m0 && !done; ++j) done = merger.absorb(m0 + j, results[j]);
    if (done) break;
  }
  return merger.finish(codec);
}

WordCollection ap_dispatch(std::span<const int> seq, int num_labels, int ell, std::uint64_t n_limit,
                           std::uint64_t m_max, std::uint64_t ceiling, bool parallel) {
  if (ell < 1) throw std::invalid_argument("word length must be positive");
  if (m_max < 1) throw std::invalid_argument("need M_max >= 1");
  if (num_labels > 256) throw std::invalid_argument("at most 256 labels supported");
  check_labels(seq, num_labels);
  if (n_limit > 0 && static_cast<u128>(seq.size()) <
                         static_cast<u128>(n_limit) + static_cast<u128>(ell - 1) * static_cast<u128>(m_max)) {
    throw std::invalid_argument("sequence prefix too short for the progression budget");
  }
  const int bits = label_bits(num_labels);
  if (ell * bits <= 64) return ap_run(seq, PackedCodec{bits, ell}, ell, n_limit, m_max, ceiling, parallel);
  return ap_run(seq, StringCodec{ell}, ell, n_limit, m_max, ceiling, parallel);
}

// Coefficients of the index t in lexicographic order (c_0 most significant).
void decode_coefficients(std::uint64_t t, std::uint64_t radix, std::vector<std::uint64_t>& c) {
  for (std::size_t j = c.size(); j-- > 0;) {
    c[j] = t % radix;
    t /= radix;
  }
}

template <class Codec>
UnitResult<typename Codec::Key> poly_unit(std::span<const int> seq, const Codec& codec, int ell,
                                          const std::vector<std::vector<u128>>& binom, std::uint64_t radix,
                                          std::uint64_t t0, std::uint64_t t1) {
  UnitResult<typename Codec::Key> r;
  r.size = t1 - t0;
  const std::size_t degree1 = binom.empty() ? 0 : binom[0].size();
  std::vector<std::uint64_t> c(degree1);
  std::vector<int> buf(static_cast<std::size_t>(ell));
  std::unordered_map<typename Codec::Key, bool> local;
  for (std::uint64_t t = t0; t < t1; ++t) {
    decode_coefficients(t, radix, c);
    // P is nondecreasing on N_0, so the last point bounds the range.
    u128 top = 0;
    for (std::size_t j = 0; j < degree1; ++j) top += static_cast<u128>(c[j]) * binom[static_cast<std::size_t>(ell - 1)][j];
    if (top >= seq.size()) {
      r.skipped.push_back(t - t0);
      continue;
    }
    for (int i = 0; i < ell; ++i) {
      u128 v = 0;
      for (std::size_t j = 0; j < degree1; ++j) v += static_cast<u128>(c[j]) * binom[static_cast<std::size_t>(i)][j];
      buf[static_cast<std::size_t>(i)] = seq[static_cast<std::size_t>(v)];
    }
    auto key = codec.encode(buf.data());
    if (local.emplace(key, true).second) r.fresh.emplace_back(t - t0, std::move(key));
  }
  return r;
}

template <class Codec>
WordCollection poly_run(std::span<const int> seq, const Codec& codec, int ell, int degree, std::uint64_t coeff_bound,
                        std::uint64_t ceiling, bool parallel) {
  // binom[i][j] = C(i, j), i < ell, j <= degree; saturates instead of wrapping.
  const u128 cap = u128{1} << 100;
  std::vector<std::vector<u128>> binom(static_cast<std::size_t>(ell),
                                       std::vector<u128>(static_cast<std::size_t>(degree) + 1, 0));
  for (int i = 0; i < ell; ++i) {
    binom[static_cast<std::size_t>(i)][0] = 1;
    for (int j = 1; j <= degree && j <= i; ++j) {
      u128 v = binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
               (j < i ? binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0);
      binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(v, cap);
    }
  }
  const std::uint64_t radix = coeff_bound + 1;
  u128 total = 1;
  for (int j = 0; j <= degree; ++j) {
    total *= radix;
    if (total > (u128{1} << 40)) throw std::invalid_argument("polynomial search space too large");
  }
  const auto T = static_cast<std::uint64_t>(total);
  const std::uint64_t chunk = 4096;
  const std::uint64_t units = (T + chunk - 1) / chunk;
  auto where = [radix, degree](std::uint64_t unit, std::uint64_t pos) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(degree) + 1);
    decode_coefficients(unit * 4096 + pos, radix, c);
    return c;
  };
  Merger<typename Codec::Key, decltype(where)> merger{{}, ceiling, 0, 0, false, where};
  const std::uint64_t batch = parallel ? static_cast<std::uint64_t>(std::max(1, omp_get_max_threads())) * 4 : 1;
  for (std::uint64_t u0 = 0; u0 < units; u0 += batch) {
    const std::uint64_t u1 = std::min(units, u0 + batch);
    std::vector<UnitResult<typename Codec::Key>> results(u1 - u0);
    auto run_unit = [&](std::uint64_t u) {
      return poly_unit(seq, codec, ell, binom, radix, u * chunk, std::min(T, (u + 1) * chunk));
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t j = 0; j < static_cast<std::int64_t>(u1 - u0); ++j) {
        results[static_cast<std::size_t>(j)] = run_unit(u0 + static_cast<std::uint64_t>(j));
      }
    } else {
      for (std::uint64_t j = 0; j < u1 - u0; ++j) results[j] = run_unit(u0 + j);
    }
    bool done = false;
    for (std::uint64_t j = 0; j < u1 - u0 && !done; ++j) done = merger.absorb(u0 + j, results[j]);
    if (done) break;
  }
  return merger.finish(codec);
}

WordCollection poly_dispatch(std::span<const int> seq, int num_labels, int ell, int degree, std::uint64_t coeff_bound,
                             std::uint64_t ceiling, bool parallel) {
  if (ell < 1) throw std::invalid_argument("word length must be positive");
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  if (num_labels > 256) throw std::invalid_argument("at most 256 labels supported");
  check_labels(seq, num_labels);
  const int bits = label_bits(num_labels);
  if (ell * bits <= 64) return poly_run(seq, PackedCodec{bits, ell}, ell, degree, coeff_bound, ceiling, parallel);
  return poly_run(seq, StringCodec{ell}, ell, degree, coeff_bound, ceiling, parallel);
}

std::uint64_t matches_for_difference(std::span<const int> seq, std::span<const int> word, std::uint64_t m) {
  const std::uint64_t N = seq.size();
  const auto ell = static_cast<std::uint64_t>(word.size());
  const std::uint64_t span = (ell - 1) * m;
  if (span >= N) return 0;
  std::uint64_t hits = 0;
  for (std::uint64_t n = 0; n + span < N; ++n) {
    std::uint64_t i = 0;
    while (i < ell && seq[n + i * m] == word[i]) ++i;
    if (i == ell) ++hits;
  }
  return hits;
}

std::uint64_t max_difference(std::uint64_t N, std::size_t ell) {
  if (N == 0) return 0;
  if (ell == 1) return N - 1;
  return (N - 1) / (ell - 1);
}

template <int D>
std::complex<double> cube_partial(std::span<const std::complex<double>> f, std::int64_t n0, std::uint64_t& cubes) {
  const auto N = static_cast<std::int64_t>(f.size());
  auto in = [N](std::int64_t x) { return x >= 0 && x < N; };
  std::complex<double> acc = 0;
  std::uint64_t count = 0;
  const auto f0 = f[static_cast<std::size_t>(n0)];
  if constexpr (D == 1) {
    for (std::int64_t a = 0; a < N; ++a) {
      acc += f0 * std::conj(f[static_cast<std::size_t>(a)]);
      ++count;
    }
  } else if constexpr (D == 2) {
    for (std::int64_t a = 0; a < N; ++a) {
      const auto fa = std::conj(f[static_cast<std::size_t>(a)]);
      for (std::int64_t b = 0; b < N; ++b) {
        const std::int64_t c = a + b - n0;
        if (!in(c)) continue;
        acc += f0 * fa * std::conj(f[static_cast<std::size_t>(b)]) * f[static_cast<std::size_t>(c)];
        ++count;
      }
    }
  } else {
    static_assert(D == 3);
    for (std::int64_t a = 0; a < N; ++a) {
      const std::int64_t n1 = a - n0;
      const auto fa = std::conj(f[static_cast<std::size_t>(a)]);
      for (std::int64_t b = 0; b < N; ++b) {
        const std::int64_t n2 = b - n0;
        const std::int64_t ab = n0 + n1 + n2;
        if (!in(ab)) continue;
        const auto fab = fa * std::conj(f[static_cast<std::size_t>(b)]) * f[static_cast<std::size_t>(ab)];
        for (std::int64_t c = 0; c < N; ++c) {
          const std::int64_t n3 = c - n0;
          const std::int64_t ac = a + n3, bc = b + n3, abc = ab + n3;
          if (!in(ac) || !in(bc) || !in(abc)) continue;
          acc += f0 * fab * std::conj(f[static_cast<std::size_t>(c)]) * f[static_cast<std::size_t>(ac)] *
                 f[static_cast<std::size_t>(bc)] * std::conj(f[static_cast<std::size_t>(abc)]);
          ++count;
        }
      }
    }
  }
  cubes = count;
  return acc;
}

std::complex<double> partial_for(std::span<const std::complex<double>> f, int d, std::int64_t n0,
                                 std::uint64_t& cubes) {
  switch (d) {
    case 1:
      return cube_partial<1>(f, n0, cubes);
    case 2:
      return cube_partial<2>(f, n0, cubes);
    case 3:
      return cube_partial<3>(f, n0, cubes);
    default:
      throw std::invalid_argument("cube sums support 1 <= d <= 3");
  }
}

CubeSum fold(const std::vector<std::complex<double>>& partial, const std::vector<std::uint64_t>& counts) {
  CubeSum out;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    out.sum += partial[i];
    out.cubes += counts[i];
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> distinct_windows(std::span<const int> seq, int num_labels, int ell_max) {
  check_labels(seq, num_labels);
  if (ell_max < 1) return {};
  const std::size_t N = seq.size();
  const auto L = static_cast<std::uint64_t>(num_labels);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(ell_max), 0);
  if (N == 0) return counts;

  // cls[n] = rank of the window of the current length starting at n.
  std::vector<std::uint32_t> cls(N);
  {
    std::vector<std::uint32_t> rank(L, 0);
    for (int x : seq) rank[static_cast<std::size_t>(x)] = 1;
    std::uint32_t next = 0;
    for (auto& r : rank) r = r ? next++ : 0;
    for (std::size_t n = 0; n < N; ++n) cls[n] = rank[static_cast<std::size_t>(seq[n])];
    counts[0] = next;
  }
  if (N > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("sequence too long");
  for (int ell = 2; ell <= ell_max; ++ell) {
    if (static_cast<std::size_t>(ell) > N) break;
    const auto windows = static_cast<std::int64_t>(N - static_cast<std::size_t>(ell) + 1);
    const std::uint64_t prev = counts[static_cast<std::size_t>(ell - 2)];
    if (prev == static_cast<std::uint64_t>(windows) + 1) {
      // Every shorter window was distinct, so every longer one is too.
      counts[static_cast<std::size_t>(ell - 1)] = static_cast<std::uint64_t>(windows);
      continue;
    }
    std::vector<std::uint8_t> present(prev * L, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t n = 0; n < windows; ++n) {
      const std::size_t slot = cls[static_cast<std::size_t>(n)] * L + static_cast<std::uint64_t>(seq[static_cast<std::size_t>(n) + static_cast<std::size_t>(ell) - 1]);
      std::atomic_ref<std::uint8_t>(present[slot]).store(1, std::memory_order_relaxed);
    }
    std::vector<std::uint32_t> rank(present.size());
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < present.size(); ++i) rank[i] = present[i] ? next++ : 0;
#pragma omp parallel for schedule(static)
    for (std::int64_t n = 0; n < windows; ++n) {
      const auto i = static_cast<std::size_t>(n);
      cls[i] = rank[cls[i] * L + static_cast<std::uint64_t>(seq[i + static_cast<std::size_t>(ell) - 1])];
    }
    counts[static_cast<std::size_t>(ell - 1)] = next;
  }
  return counts;
}

std::vector<std::uint64_t> distinct_windows_serial(std::span<const int> seq, int num_labels, int ell_max) {
  check_labels(seq, num_labels);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(ell_max, 0)), 0);
  for (int ell = 1; ell <= ell_max; ++ell) {
    if (static_cast<std::size_t>(ell) > seq.size()) break;
    std::set<std::vector<int>> words;
    for (std::size_t n = 0; n + static_cast<std::size_t>(ell) <= seq.size(); ++n) {
      words.emplace(seq.begin() + static_cast<std::ptrdiff_t>(n), seq.begin() + static_cast<std::ptrdiff_t>(n) + ell);
    }
    counts[static_cast<std::size_t>(ell - 1)] = words.size();
  }
  return counts;
}

WordCollection ap_words(std::span<const int> seq, int num_labels, int ell, std::uint64_t n_limit,
                        std::uint64_t m_max, std::uint64_t ceiling) {
  return ap_dispatch(seq, num_labels, ell, n_limit, m_max, ceiling, true);
}

WordCollection ap_words_serial(std::span<const int> seq, int num_labels, int ell, std::uint64_t n_limit,
                               std::uint64_t m_max, std::uint64_t ceiling) {
  return ap_dispatch(seq, num_labels, ell, n_limit, m_max, ceiling, false);
}

WordCollection poly_words(std::span<const int> seq, int num_labels, int ell, int degree, std::uint64_t coeff_bound,
                          std::uint64_t ceiling) {
  return poly_dispatch(seq, num_labels, ell, degree, coeff_bound, ceiling, true);
}

WordCollection poly_words_serial(std::span<const int> seq, int num_labels, int ell, int degree,
                                 std::uint64_t coeff_bound, std::uint64_t ceiling) {
  return poly_dispatch(seq, num_labels, ell, degree, coeff_bound, ceiling, false);
}

std::uint64_t progression_matches(std::span<const int> seq, std::span<const int> word) {
  if (word.empty()) throw std::invalid_argument("word must be nonempty");
  const std::uint64_t top = max_difference(seq.size(), word.size());
  std::uint64_t total = 0;
  if (seq.empty()) return 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total)
  for (std::int64_t m = 0; m <= static_cast<std::int64_t>(top); ++m) {
    total += word.size() == 1 ? matches_for_difference(seq, word, 0)
                              : matches_for_difference(seq, word, static_cast<std::uint64_t>(m));
  }
  return total;
}

std::uint64_t progression_matches_serial(std::span<const int> seq, std::span<const int> word) {
  if (word.empty()) throw std::invalid_argument("word must be nonempty");
  if (seq.empty()) return 0;
  std::uint64_t total = 0;
  for (std::uint64_t m = 0; m <= max_difference(seq.size(), word.size()); ++m) {
    total += matches_for_difference(seq, word, word.size() == 1 ? 0 : m);
  }
  return total;
}

CubeSum interval_cube_sum(std::span<const std::complex<double>> f, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("cube sums support 1 <= d <= 3");
  const auto N = static_cast<std::int64_t>(f.size());
  std::vector<std::complex<double>> partial(f.size());
  std::vector<std::uint64_t> counts(f.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t n0 = 0; n0 < N; ++n0) {
    partial[static_cast<std::size_t>(n0)] = partial_for(f, d, n0, counts[static_cast<std::size_t>(n0)]);
  }
  return fold(partial, counts);
}

CubeSum interval_cube_sum_serial(std::span<const std::complex<double>> f, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("cube sums support 1 <= d <= 3");
  std::vector<std::complex<double>> partial(f.size());
  std::vector<std::uint64_t> counts(f.size());
  for (std::size_t n0 = 0; n0 < f.size(); ++n0) {
    partial[n0] = partial_for(f, d, static_cast<std::int64_t>(n0), counts[n0]);
  }
  return fold(partial, counts);
}

}  // namespace autoseq::kernels
