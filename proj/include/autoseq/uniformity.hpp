#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"

namespace autoseq {

// f(0), ..., f(N-1), all finite.
class FiniteSignal {
 public:
  FiniteSignal() = default;
  explicit FiniteSignal(std::vector<std::complex<double>> values);
  static FiniteSignal real(const std::vector<double>& values);

  std::size_t size() const { return values_.size(); }
  const std::vector<std::complex<double>>& values() const { return values_; }
  std::complex<double> operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<std::complex<double>> values_;
};

struct GowersCaps {
  std::size_t d2 = 256;
  std::size_t d3 = 96;
};

struct GowersValue {
  double value = 0;
  std::uint64_t cubes = 0;
  bool empty = false;  // no valid cube; value reported as 0
};

// Interval norm: the 2^d-th root of the average, over all cubes with every
// vertex n_0 + omega . n in [0, N), of prod_omega C^{|omega|} f(vertex).
// Requires 2 <= d <= 3 and N within the cap for d.
GowersValue gowers_norm_interval(const FiniteSignal& f, int d, const GowersCaps& caps = {});
GowersValue gowers_norm_interval_serial(const FiniteSignal& f, int d, const GowersCaps& caps = {});

// U^2 norm on Z/NZ: (sum_xi |f^(xi)|^4)^(1/4) with f^(xi) = (1/N) sum_x
// f(x) e(-x xi / N). Direct DFT. A different normalization from the
// interval norm.
double gowers_u2_cyclic(const FiniteSignal& f);
// The same quantity by enumerating all cyclic cubes (x, x+h1, x+h2, x+h1+h2).
double gowers_u2_cyclic_cubes(const FiniteSignal& f);

// Interval norm of n -> 1[a(n) = label] - rho with rho the density of the
// label on [0, N).
GowersValue uniformity_probe(const Dfao& a, const std::string& label, int d, std::size_t n,
                             const GowersCaps& caps = {});

}  // namespace autoseq
