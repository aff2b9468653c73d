#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/digits.hpp"

namespace autoseq {

// Generalized residue class: the n >= 0 whose base-k expansion begins with
// `prefix`, ends with `suffix`, has length = len_class (mod len_mod), and
// with n = res_class (mod res_mod). res_mod must be coprime to k and the
// prefix may not start with 0.
class ApkSet {
 public:
  explicit ApkSet(int base, DigitWord prefix = {}, DigitWord suffix = {}, int len_mod = 1, int len_class = 0,
                  int res_mod = 1, int res_class = 0);

  // Literal syntax: u=<digits>,v=<digits>,len=<l>%<m>,res=<c>%<q>, any part
  // omittable; the empty literal is the whole of N_0.
  static ApkSet parse(std::string_view literal, int base);

  int base() const { return base_; }
  const DigitWord& prefix() const { return prefix_; }
  const DigitWord& suffix() const { return suffix_; }
  int len_mod() const { return len_mod_; }
  int len_class() const { return len_class_; }
  int res_mod() const { return res_mod_; }
  int res_class() const { return res_class_; }

  bool contains(std::uint64_t n) const;

  // Canonical literal with all four components.
  std::string str() const;

  friend bool operator==(const ApkSet&, const ApkSet&) = default;

 private:
  int base_;
  DigitWord prefix_;
  DigitWord suffix_;
  int len_mod_;
  int len_class_;
  int res_mod_;
  int res_class_;
};

// Members below n in increasing order, by stepping the free middle digits.
std::vector<std::uint64_t> enumerate_members(const ApkSet& set, std::uint64_t n);

// Intersection with the set given by the extra constraints, or nullopt when
// they are incompatible (prefixes or suffixes disagree, or a congruence
// system has no solution). Mixing bases throws std::invalid_argument.
std::optional<ApkSet> refine(const ApkSet& set, const DigitWord& prefix, const DigitWord& suffix, int len_mod,
                             int len_class, int res_mod, int res_class);
std::optional<ApkSet> intersect(const ApkSet& a, const ApkSet& b);

// {a(n) : n in Q, n < limit} as label strings.
std::set<std::string> value_set(const Dfao& a, const ApkSet& set, std::uint64_t limit);

// (1 / log N) * sum over n < N, n in Q, a(n) = label of 1/(n+1). Raw partial
// sum, no extrapolation. Returns 0 for a label the automaton never outputs.
double log_density_estimate(const Dfao& a, std::string_view label, const ApkSet& set, std::uint64_t limit);

struct BracketOptions {
  // Candidates have |u|, |v| <= candidate_depth. A refinement may lengthen
  // the prefix and the suffix by up to `depth` digits each, and all len and
  // res moduli are at most `depth`.
  int depth = 4;
  int candidate_depth = 2;
  std::uint64_t limit = std::uint64_t{1} << 14;
  // Refinements with fewer members below `limit` are not counted. The lower
  // estimate counts every refinement with at least min_members_lo members,
  // the upper one only those with at least min_members_hi.
  int min_members_lo = 4;
  int min_members_hi = 16;
  std::size_t max_table_entries = std::size_t{1} << 22;
};

// Empirical bracket for the effective alphabet size.
//
// Candidates P range over all sets with |u|,|v| <= candidate_depth,
// len_mod <= depth and res_mod <= depth coprime to k, having at least
// min_members_hi members below `limit`. For each P the refinements are P & B
// for every B with |u|,|v| <= candidate_depth + depth and moduli <= depth.
// score(P) is the least number of values taken on a counted refinement, and
// r = max_P score(P). Counting sparse refinements drags the estimate down, so
// r_lo <= r_hi always holds; neither is a proof.
struct EmpiricalBracket {
  int r_lo = 0;
  int r_hi = 0;
  std::size_t candidates = 0;  // P examined
  std::optional<ApkSet> best_lo;
  std::optional<ApkSet> best_hi;
};

// Table-driven search, parallel over P.
EmpiricalBracket empirical_effective_alphabet(const Dfao& a, const BracketOptions& options);
// Direct evaluation through intersect() and enumerate_members(); same result,
// kept for cross-checking at small depth.
EmpiricalBracket empirical_effective_alphabet_reference(const Dfao& a, const BracketOptions& options);

enum class MascVerdict { kMaximal, kNotMaximal, kInconclusive };
std::string to_string(MascVerdict v);

struct MascResult {
  MascVerdict verdict = MascVerdict::kInconclusive;
  int structural_r = -1;  // -1 when the structural analysis hit a budget
  int attained_labels = 0;
  std::optional<EmpiricalBracket> evidence;
  std::string note;
};

// Maximal arithmetical subword complexity iff the structural r equals the
// number of attained labels. The empirical bracket is attached as evidence.
MascResult masc_check(const Dfao& a, const BracketOptions& options);

}  // namespace autoseq
