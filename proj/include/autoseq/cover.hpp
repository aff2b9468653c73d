#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "autoseq/complexity.hpp"
#include "autoseq/digits.hpp"

namespace autoseq {

// Dominant growth rate of the number of base-k words avoiding w, from the
// transfer matrix of the failure-function automaton. Throws
// std::runtime_error if power iteration does not converge.
double avoidance_rate(int k, const DigitWord& w);

struct CoverPiece {
  enum class Kind { kSingleton, kBlock };
  Kind kind = Kind::kSingleton;
  double x0 = 0;  // half-open [x0, x1)
  double x1 = 0;
  std::int64_t point = 0;  // singleton
  std::uint64_t m = 0;     // block: P maps the piece into [m k^i, (m+1) k^i)
  int i = 0;
};

struct CoverParams {
  int base = 2;
  int degree = 1;
  double mu = 0;
  double lambda = 0;
  double theta = 0;
  double epsilon = 0;
  double R = 0;
  std::uint64_t K = 1;  // nominal block scale k^i, the largest power <= M / R
  int i = 0;
  std::uint64_t K_used = 1;  // scale of the emitted blocks, K times a power of k
  int i_used = 0;
  double M = 0;        // max |P - P(0)| on [0, ell]
  double M_prime = 0;  // max |P'| on [0, ell]
  double threshold = 0;
  std::vector<std::pair<double, double>> large_derivative;  // components of I
};

struct Cover {
  std::vector<CoverPiece> pieces;
  CoverParams params;
};

// Covering of the integers of [0, ell) by singletons and digit-block
// preimages. Blocks use the nominal scale K or the coarser power of k that
// yields the fewest pieces. Requires deg P >= 1, ell >= 2 and P >= 0 on
// [0, ell).
Cover build_cover(const IntegerPolynomial& p, const DigitWord& w, std::int64_t ell, int k);

struct CoverVerdict {
  bool partition_ok = false;    // every integer in exactly one piece
  bool containment_ok = false;  // block contracts hold
  std::size_t pieces = 0;
  std::size_t singletons = 0;
  std::size_t blocks = 0;
  double ratio = 0;  // pieces / ell^theta
  std::string problem;  // first failure, if any

  bool ok() const { return partition_ok && containment_ok; }
};

CoverVerdict verify_cover(const std::vector<CoverPiece>& pieces, const IntegerPolynomial& p, const DigitWord& w,
                          std::int64_t ell, int k, double theta);

std::string cover_json(const Cover& cover, const CoverVerdict& verdict);

}  // namespace autoseq
