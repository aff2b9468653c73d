#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

// Enumeration kernels over a precomputed label sequence. Every kernel comes
// in an OpenMP version and a serial reference; both return identical results
// (including witnesses) for any thread count.
namespace autoseq::kernels {

// Number of distinct factors of length 1..ell_max of seq; entry ell-1 counts
// the windows seq[n..n+ell) with n + ell <= seq.size(). Labels lie in
// [0, num_labels).
std::vector<std::uint64_t> distinct_windows(std::span<const int> seq, int num_labels, int ell_max);
std::vector<std::uint64_t> distinct_windows_serial(std::span<const int> seq, int num_labels, int ell_max);

struct WordHit {
  std::vector<int> word;
  // First occurrence in enumeration order: (n, m) for progressions,
  // the binomial coefficients for polynomials.
  std::vector<std::uint64_t> where;
};

struct WordCollection {
  std::vector<WordHit> words;  // sorted by word
  std::uint64_t examined = 0;  // progressions or polynomials looked at
  std::uint64_t skipped = 0;   // polynomials leaving the evaluation range
  bool saturated = false;      // stopped early at the ceiling
};

// Words (seq[n + i*m])_{i<ell} over m = 1..m_max (outer) and n = 0..n_limit-1
// (inner). Needs seq.size() >= n_limit + (ell-1)*m_max. Stops once `ceiling`
// distinct words are known (0 disables).
WordCollection ap_words(std::span<const int> seq, int num_labels, int ell, std::uint64_t n_limit,
                        std::uint64_t m_max, std::uint64_t ceiling);
WordCollection ap_words_serial(std::span<const int> seq, int num_labels, int ell, std::uint64_t n_limit,
                               std::uint64_t m_max, std::uint64_t ceiling);

// Words (seq[P(i)])_{i<ell} for P(i) = sum_{j<=degree} c_j binom(i, j) with
// every c_j in [0, coeff_bound]. Coefficient vectors are visited in
// lexicographic order; P with P(ell-1) >= seq.size() is skipped.
WordCollection poly_words(std::span<const int> seq, int num_labels, int ell, int degree, std::uint64_t coeff_bound,
                          std::uint64_t ceiling);
WordCollection poly_words_serial(std::span<const int> seq, int num_labels, int ell, int degree,
                                 std::uint64_t coeff_bound, std::uint64_t ceiling);

// #{(n, m) : n + (ell-1) m < seq.size(), seq[n + i m] = word[i] for i < ell},
// m >= 0. For ell = 1 the difference is restricted to m < seq.size().
std::uint64_t progression_matches(std::span<const int> seq, std::span<const int> word);
std::uint64_t progression_matches_serial(std::span<const int> seq, std::span<const int> word);

struct CubeSum {
  std::complex<double> sum;
  std::uint64_t cubes = 0;
};

// Sum over all (n_0, ..., n_d) with n_0 + omega . n in [0, N) for every omega
// in {0,1}^d of prod_omega C^{|omega|} f(n_0 + omega . n), C = conjugation.
// Partial sums are formed per n_0 and added in order of n_0.
CubeSum interval_cube_sum(std::span<const std::complex<double>> f, int d);
CubeSum interval_cube_sum_serial(std::span<const std::complex<double>> f, int d);

}  // namespace autoseq::kernels
