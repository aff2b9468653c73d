#include "autoseq/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "json.hpp"

namespace autoseq {

namespace {

using Poly = std::vector<double>;  // monomial coefficients, lowest first

double eval(const Poly& p, double x) {
  double v = 0;
  for (std::size_t j = p.size(); j-- > 0;) v = v * x + p[j];
  return v;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * static_cast<double>(j));
  return d;
}

Poly trimmed(Poly p) {
  while (!p.empty() && p.back() == 0.0) p.pop_back();
  return p;
}

// Real roots of p in (lo, hi), ascending. The derivative's roots split the
// interval into monotone pieces, each bisected on a sign change.
std::vector<double> real_roots(const Poly& raw, double lo, double hi) {
  Poly p = trimmed(raw);
  std::vector<double> out;
  if (p.size() <= 1) return out;
  if (p.size() == 2) {
    const double x = -p[0] / p[1];
    if (x > lo && x < hi) out.push_back(x);
    return out;
  }
  if (p.size() == 3) {
    const double a = p[2], b = p[1], c = p[0];
    const double disc = b * b - 4 * a * c;
    if (disc < 0) return out;
    const double s = std::sqrt(disc);
    // Stable form of the quadratic formula.
    const double q = -0.5 * (b + (b >= 0 ? s : -s));
    std::vector<double> xs;
    if (q != 0) {
      xs.push_back(q / a);
      xs.push_back(c / q);
    } else {
      xs.push_back(0.0);
    }
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
      if (x > lo && x < hi && (out.empty() || out.back() != x)) out.push_back(x);
    }
    return out;
  }
  std::vector<double> cuts{lo};
  for (double x : real_roots(derivative(p), lo, hi)) cuts.push_back(x);
  cuts.push_back(hi);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    double a = cuts[s], b = cuts[s + 1];
    double fa = eval(p, a), fb = eval(p, b);
    if (fa == 0 && a > lo) {
      if (out.empty() || out.back() != a) out.push_back(a);
      continue;
    }
    if ((fa < 0) == (fb < 0) || fb == 0) continue;
    for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = eval(p, mid);
      if ((fm < 0) == (fa < 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

double max_abs_on(const Poly& p, double lo, double hi) {
  double best = std::max(std::abs(eval(p, lo)), std::abs(eval(p, hi)));
  for (double x : real_roots(derivative(p), lo, hi)) best = std::max(best, std::abs(eval(p, x)));
  return best;
}

// Failure-function automaton for w; state |w| (full match) is absorbing.
std::vector<int> kmp_automaton(int k, const DigitWord& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> fail(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1, j = 0; i < n; ++i) {
    while (j > 0 && w[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(j)]) j = fail[static_cast<std::size_t>(j)];
    if (w[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>(j)]) ++j;
    fail[static_cast<std::size_t>(i) + 1] = j;
  }
  std::vector<int> delta(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(k));
  for (int s = 0; s <= n; ++s) {
    for (int d = 0; d < k; ++d) {
      int t;
      if (s == n) {
        t = n;
      } else if (w[static_cast<std::size_t>(s)] == d) {
        t = s + 1;
      } else {
        t = s == 0 ? 0 : delta[static_cast<std::size_t>(fail[static_cast<std::size_t>(s)]) * static_cast<std::size_t>(k) + static_cast<std::size_t>(d)];
      }
      delta[static_cast<std::size_t>(s) * static_cast<std::size_t>(k) + static_cast<std::size_t>(d)] = t;
    }
  }
  return delta;
}

bool contains_word(const std::vector<int>& delta, int k, int n, std::uint64_t m) {
  // Digits most significant first.
  std::vector<int> digits;
  for (; m > 0; m /= static_cast<std::uint64_t>(k)) digits.push_back(static_cast<int>(m % static_cast<std::uint64_t>(k)));
  int s = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    s = delta[static_cast<std::size_t>(s) * static_cast<std::size_t>(k) + static_cast<std::size_t>(digits[i])];
    if (s == n) return true;
  }
  return false;
}

// Spectral radius of a nonnegative irreducible block via power iteration on
// B + I, which is primitive.
double block_radius(const std::vector<std::vector<double>>& B) {
  const std::size_t n = B.size();
  std::vector<double> x(n, 1.0), y(n);
  double prev = 0;
  for (int it = 0; it < 1000000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < n; ++j) s += B[i][j] * x[j];
      y[i] = s;
    }
    double norm = 0;
    for (double v : y) norm = std::max(norm, v);
    const double est = norm / std::max(1e-300, *std::max_element(x.begin(), x.end()));
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (it > 10 && std::abs(est - prev) <= 1e-10 * est) return est - 1.0;
    prev = est;
  }
  throw std::runtime_error("power iteration did not converge");
}

}  // namespace

double avoidance_rate(int k, const DigitWord& w) {
  if (k < 2) throw std::invalid_argument("base must be at least 2");
  if (w.empty()) throw std::invalid_argument("avoided word must be nonempty");
  if (!w.valid_for(k)) throw std::invalid_argument("digit out of range");
  const int n = static_cast<int>(w.size());
  auto delta = kmp_automaton(k, w);
  // Transfer matrix on the live states 0..n-1.
  std::vector<std::vector<double>> A(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0));
  for (int s = 0; s < n; ++s) {
    for (int d = 0; d < k; ++d) {
      int t = delta[static_cast<std::size_t>(s) * static_cast<std::size_t>(k) + static_cast<std::size_t>(d)];
      if (t < n) A[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] += 1;
    }
  }
  // Strongly connected components by mutual reachability (n is tiny).
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int s = 0; s < n; ++s) {
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (A[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > 0 && !reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]) {
          reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  double mu = 0;
  for (int s = 0; s < n; ++s) {
    if (done[static_cast<std::size_t>(s)] || !reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)]) continue;
    std::vector<int> members;
    for (int t = 0; t < n; ++t) {
      if (reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] && reach[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]) {
        members.push_back(t);
        done[static_cast<std::size_t>(t)] = true;
      }
    }
    std::vector<std::vector<double>> B(members.size(), std::vector<double>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        B[i][j] = A[static_cast<std::size_t>(members[i])][static_cast<std::size_t>(members[j])];
      }
    }
    mu = std::max(mu, block_radius(B));
  }
  return mu;
}

Cover build_cover(const IntegerPolynomial& p, const DigitWord& w, std::int64_t ell, int k) {
  if (k < 2) throw std::invalid_argument("base must be at least 2");
  const int d = p.degree();
  if (d < 1) throw std::invalid_argument("polynomial must be nonconstant");
  if (ell < 2) throw std::invalid_argument("need ell >= 2");
  if (w.empty() || !w.valid_for(k)) throw std::invalid_argument("word must be nonempty and valid for the base");

  Cover cover;
  CoverParams& c = cover.params;
  c.base = k;
  c.degree = d;
  c.mu = avoidance_rate(k, w);
  c.lambda = c.mu <= 0 ? 1.0 : 1.0 - std::log(c.mu) / std::log(static_cast<double>(k));
  c.theta = d / (d + c.lambda);
  const double L = static_cast<double>(ell);
  c.R = std::pow(L, c.theta);
  c.epsilon = std::pow(c.R, -c.lambda / d);

  Poly mono = trimmed(p.monomial());
  Poly shifted = mono;
  shifted[0] = 0;
  Poly dp = derivative(mono);
  c.M = max_abs_on(shifted, 0, L);
  c.M_prime = max_abs_on(dp, 0, L);

  const double ratio = c.M / c.R;
  c.K = 1;
  c.i = 0;
  while (static_cast<double>(c.K) * k <= ratio && c.K <= std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k) / 2) {
    c.K *= static_cast<std::uint64_t>(k);
    ++c.i;
  }
  c.K_used = c.K;
  c.i_used = c.i;

  if (d == 1) {
    c.threshold = 0;
    c.large_derivative = {{0.0, L}};
  } else {
    c.threshold = std::pow(c.epsilon, d - 1) * c.M_prime;
    std::vector<double> cuts{0.0};
    for (double sign : {-1.0, 1.0}) {
      Poly g = dp;
      if (g.empty()) g.push_back(0);
      g[0] += sign * c.threshold;
      for (double x : real_roots(g, 0, L)) cuts.push_back(x);
    }
    cuts.push_back(L);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double a = cuts[s], b = cuts[s + 1];
      if (b <= a) continue;
      if (std::abs(eval(dp, 0.5 * (a + b))) <= c.threshold) continue;
      if (!c.large_derivative.empty() && c.large_derivative.back().second == a) {
        c.large_derivative.back().second = b;
      } else {
        c.large_derivative.emplace_back(a, b);
      }
    }
  }

  const auto delta = kmp_automaton(k, w);
  const int wn = static_cast<int>(w.size());
  std::vector<std::uint64_t> values(static_cast<std::size_t>(ell));
  std::vector<int> comps(static_cast<std::size_t>(ell));
  // Component of I holding x, or -1. I is open except at the ends of [0, ell].
  std::size_t comp = 0;
  for (std::int64_t x = 0; x < ell; ++x) {
    const std::int64_t v = p(x);
    if (v < 0) throw std::invalid_argument("polynomial takes a negative value on [0, ell)");
    values[static_cast<std::size_t>(x)] = static_cast<std::uint64_t>(v);
    const double fx = static_cast<double>(x);
    while (comp < c.large_derivative.size() && c.large_derivative[comp].second < fx) ++comp;
    int cx = -1;
    if (comp < c.large_derivative.size()) {
      const auto [a, b] = c.large_derivative[comp];
      const bool left = a == 0.0 ? fx >= a : fx > a;
      const bool right = b == L ? fx <= b : fx < b;
      if (left && right) cx = static_cast<int>(comp);
    }
    comps[static_cast<std::size_t>(x)] = cx;
  }
  const std::uint64_t top = *std::max_element(values.begin(), values.end());

  auto assemble = [&](std::uint64_t K, int i) {
    std::vector<CoverPiece> pieces;
    struct Run {
      int comp;
      std::uint64_t m;
      std::int64_t first;
    };
    std::optional<Run> run;
    auto close = [&](std::int64_t end) {
      if (!run) return;
      CoverPiece piece;
      piece.kind = CoverPiece::Kind::kBlock;
      piece.x0 = static_cast<double>(run->first);
      piece.x1 = static_cast<double>(end);
      piece.m = run->m;
      piece.i = i;
      pieces.push_back(piece);
      run.reset();
    };
    for (std::int64_t x = 0; x < ell; ++x) {
      const std::uint64_t m = values[static_cast<std::size_t>(x)] / K;
      const int cx = comps[static_cast<std::size_t>(x)];
      const bool good = cx >= 0 && contains_word(delta, k, wn, m);
      if (run && (!good || run->comp != cx || run->m != m)) close(x);
      if (good) {
        if (!run) run = Run{cx, m, x};
      } else {
        CoverPiece piece;
        piece.x0 = static_cast<double>(x);
        piece.x1 = static_cast<double>(x + 1);
        piece.point = x;
        pieces.push_back(piece);
      }
    }
    close(ell);
    return pieces;
  };

  // Block scale: the nominal K or any coarser power of k, whichever gives the
  // fewest pieces.
  cover.pieces = assemble(c.K, c.i);
  std::uint64_t K = c.K;
  int i = c.i;
  while (K <= top / static_cast<std::uint64_t>(k)) {
    K *= static_cast<std::uint64_t>(k);
    ++i;
    auto pieces = assemble(K, i);
    if (pieces.size() < cover.pieces.size()) {
      cover.pieces = std::move(pieces);
      c.K_used = K;
      c.i_used = i;
    }
  }
  return cover;
}

CoverVerdict verify_cover(const std::vector<CoverPiece>& pieces, const IntegerPolynomial& p, const DigitWord& w,
                          std::int64_t ell, int k, double theta) {
  CoverVerdict v;
  v.pieces = pieces.size();
  v.partition_ok = true;
  v.containment_ok = true;
  auto fail = [&v](bool& flag, std::string why) {
    flag = false;
    if (v.problem.empty()) v.problem = std::move(why);
  };
  const auto delta = kmp_automaton(k, w);
  const int wn = static_cast<int>(w.size());
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(std::max<std::int64_t>(ell, 0)), 0);
  for (std::size_t idx = 0; idx < pieces.size(); ++idx) {
    const auto& piece = pieces[idx];
    const auto lo = static_cast<std::int64_t>(std::ceil(piece.x0));
    const auto hi = static_cast<std::int64_t>(std::ceil(piece.x1));  // exclusive
    if (piece.kind == CoverPiece::Kind::kSingleton) {
      ++v.singletons;
      if (hi - lo != 1 || lo != piece.point) fail(v.partition_ok, "piece " + std::to_string(idx) + " is not a singleton");
    } else {
      ++v.blocks;
      if (!contains_word(delta, k, wn, piece.m)) {
        fail(v.containment_ok, "piece " + std::to_string(idx) + ": word missing from the block index");
      }
    }
    std::uint64_t K = 1;
    for (int j = 0; j < piece.i; ++j) K *= static_cast<std::uint64_t>(k);
    for (std::int64_t x = lo; x < hi; ++x) {
      if (x < 0 || x >= ell) {
        fail(v.partition_ok, "piece " + std::to_string(idx) + " leaves [0, ell)");
        continue;
      }
      if (++hits[static_cast<std::size_t>(x)] > 1) fail(v.partition_ok, "integer " + std::to_string(x) + " covered twice");
      if (piece.kind == CoverPiece::Kind::kBlock) {
        const std::int64_t value = p(x);
        const auto m = static_cast<unsigned __int128>(piece.m);
        if (value < 0 || static_cast<unsigned __int128>(value) < m * K ||
            static_cast<unsigned __int128>(value) >= (m + 1) * K) {
          fail(v.containment_ok, "P(" + std::to_string(x) + ") outside the block of piece " + std::to_string(idx));
        }
      }
    }
  }
  for (std::int64_t x = 0; x < ell; ++x) {
    if (hits[static_cast<std::size_t>(x)] == 0) {
      fail(v.partition_ok, "integer " + std::to_string(x) + " not covered");
      break;
    }
  }
  v.ratio = static_cast<double>(v.pieces) / std::pow(static_cast<double>(ell), theta);
  return v;
}

std::string cover_json(const Cover& cover, const CoverVerdict& verdict) {
  nlohmann::ordered_json j;
  const auto& c = cover.params;
  j["params"] = {{"base", c.base},     {"degree", c.degree}, {"mu", c.mu},           {"lambda", c.lambda},
                 {"theta", c.theta},   {"epsilon", c.epsilon}, {"R", c.R},           {"K", c.K},
                 {"i", c.i},           {"K_used", c.K_used}, {"i_used", c.i_used}, {"M", c.M},           {"M_prime", c.M_prime}, {"threshold", c.threshold}};
  j["params"]["I"] = nlohmann::ordered_json::array();
  for (auto [a, b] : c.large_derivative) j["params"]["I"].push_back({a, b});
  j["pieces"] = nlohmann::ordered_json::array();
  for (const auto& piece : cover.pieces) {
    if (piece.kind == CoverPiece::Kind::kSingleton) {
      j["pieces"].push_back({{"kind", "singleton"}, {"x", piece.point}});
    } else {
      j["pieces"].push_back({{"kind", "block"}, {"x0", piece.x0}, {"x1", piece.x1}, {"m", piece.m}, {"i", piece.i}});
    }
  }
  j["verdict"] = {{"partition_ok", verdict.partition_ok},
                  {"containment_ok", verdict.containment_ok},
                  {"pieces", verdict.pieces},
                  {"singletons", verdict.singletons},
                  {"blocks", verdict.blocks},
                  {"ratio", verdict.ratio}};
  if (!verdict.problem.empty()) j["verdict"]["problem"] = verdict.problem;
  return j.dump(2) + "\n";
}

}  // namespace autoseq
