#include "autoseq/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "autoseq/kernels.hpp"

namespace autoseq {

FiniteSignal::FiniteSignal(std::vector<std::complex<double>> values) : values_(std::move(values)) {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("signal value not finite");
  }
}

FiniteSignal FiniteSignal::real(const std::vector<double>& values) {
  return FiniteSignal(std::vector<std::complex<double>>(values.begin(), values.end()));
}

namespace {

GowersValue finish(const kernels::CubeSum& s, int d) {
  GowersValue out;
  out.cubes = s.cubes;
  if (s.cubes == 0) {
    out.empty = true;
    return out;
  }
  // The average is real and nonnegative up to rounding.
  const double avg = std::max(0.0, s.sum.real() / static_cast<double>(s.cubes));
  out.value = std::pow(avg, 1.0 / static_cast<double>(1 << d));
  return out;
}

void check(const FiniteSignal& f, int d, const GowersCaps& caps) {
  if (d < 2 || d > 3) throw std::invalid_argument("interval Gowers norm supports d = 2 or 3");
  const std::size_t cap = d == 2 ? caps.d2 : caps.d3;
  if (f.size() > cap) {
    throw std::invalid_argument("N = " + std::to_string(f.size()) + " exceeds the cap " + std::to_string(cap) +
                                " for d = " + std::to_string(d));
  }
}

}  // namespace

GowersValue gowers_norm_interval(const FiniteSignal& f, int d, const GowersCaps& caps) {
  check(f, d, caps);
  return finish(kernels::interval_cube_sum(f.values(), d), d);
}

GowersValue gowers_norm_interval_serial(const FiniteSignal& f, int d, const GowersCaps& caps) {
  check(f, d, caps);
  return finish(kernels::interval_cube_sum_serial(f.values(), d), d);
}

double gowers_u2_cyclic(const FiniteSignal& f) {
  const std::size_t N = f.size();
  if (N == 0) throw std::invalid_argument("empty signal");
  double total = 0;
  for (std::size_t xi = 0; xi < N; ++xi) {
    std::complex<double> c = 0;
    for (std::size_t x = 0; x < N; ++x) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((x * xi) % N) / static_cast<double>(N);
      c += f[x] * std::polar(1.0, angle);
    }
    c /= static_cast<double>(N);
    total += std::norm(c) * std::norm(c);
  }
  return std::pow(total, 0.25);
}

double gowers_u2_cyclic_cubes(const FiniteSignal& f) {
  const std::size_t N = f.size();
  if (N == 0) throw std::invalid_argument("empty signal");
  std::complex<double> total = 0;
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t a = 0; a < N; ++a) {
      const auto fa = f[x] * std::conj(f[(x + a) % N]);
      for (std::size_t b = 0; b < N; ++b) total += fa * std::conj(f[(x + b) % N]) * f[(x + a + b) % N];
    }
  }
  const double n3 = static_cast<double>(N) * static_cast<double>(N) * static_cast<double>(N);
  return std::pow(std::max(0.0, total.real() / n3), 0.25);
}

GowersValue uniformity_probe(const Dfao& a, const std::string& label, int d, std::size_t n, const GowersCaps& caps) {
  if (n == 0) throw std::invalid_argument("N must be positive");
  const auto norm = normalize_leading_zeros(a);
  auto seq = generate_prefix(norm, n);
  int target = -1;
  for (int i = 0; i < norm.num_labels(); ++i) {
    if (norm.label(i) == label) target = i;
  }
  std::vector<double> ind(n, 0.0);
  double hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seq[i] == target) {
      ind[i] = 1.0;
      hits += 1;
    }
  }
  const double rho = hits / static_cast<double>(n);
  for (auto& v : ind) v -= rho;
  return gowers_norm_interval(FiniteSignal::real(ind), d, caps);
}

}  // namespace autoseq
