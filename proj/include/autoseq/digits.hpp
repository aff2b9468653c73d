#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace autoseq {

// A finite word over the digit alphabet {0, ..., k-1}, most significant
// digit first. The base is not stored; callers validate against theirs.
class DigitWord {
 public:
  DigitWord() = default;
  explicit DigitWord(std::vector<int> digits);
  DigitWord(std::initializer_list<int> digits);

  // Base-k expansion without leading zeros; expansion(0) is the empty word.
  static DigitWord expansion(std::uint64_t n, int base);

  // Accepts "1021" (one character per digit) or "1.10.3" (dot separated,
  // for bases above 10). The empty string gives the empty word.
  static DigitWord parse(std::string_view text);

  // [u]_k. Throws std::overflow_error if the value does not fit.
  std::uint64_t value(int base) const;

  bool valid_for(int base) const;
  bool has_leading_zero() const { return !digits_.empty() && digits_.front() == 0; }

  bool is_prefix_of(const DigitWord& other) const;
  bool is_suffix_of(const DigitWord& other) const;
  // True if this word occurs as a contiguous factor of `other`.
  bool occurs_in(const DigitWord& other) const;

  DigitWord concat(const DigitWord& other) const;

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  int operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<int>& digits() const { return digits_; }
  auto begin() const { return digits_.begin(); }
  auto end() const { return digits_.end(); }

  // Inverse of parse(); dot separated as soon as a digit exceeds 9, with a
  // trailing dot for a single such digit ("12.").
  std::string str() const;

  friend bool operator==(const DigitWord&, const DigitWord&) = default;
  friend auto operator<=>(const DigitWord&, const DigitWord&) = default;

 private:
  std::vector<int> digits_;
};

// Number of base-k digits of n; 0 for n == 0.
int expansion_length(std::uint64_t n, int base);

// k^e, throwing std::overflow_error past 2^64.
std::uint64_t checked_pow(std::uint64_t base, int exponent);

}  // namespace autoseq
