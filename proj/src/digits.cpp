#include "autoseq/digits.hpp"

#include <algorithm>
#include <stdexcept>

namespace autoseq {

DigitWord::DigitWord(std::vector<int> digits) : digits_(std::move(digits)) {
  for (int d : digits_) {
    if (d < 0) throw std::invalid_argument("negative digit in word");
  }
}

DigitWord::DigitWord(std::initializer_list<int> digits)
    : DigitWord(std::vector<int>(digits)) {}

DigitWord DigitWord::expansion(std::uint64_t n, int base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  std::vector<int> out;
  while (n > 0) {
    out.push_back(static_cast<int>(n % static_cast<std::uint64_t>(base)));
    n /= static_cast<std::uint64_t>(base);
  }
  std::reverse(out.begin(), out.end());
  return DigitWord(std::move(out));
}

DigitWord DigitWord::parse(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return DigitWord();
  if (text.find('.') != std::string_view::npos) {
    if (text.size() > 1 && text.back() == '.' && text.find('.') == text.size() - 1) text.remove_suffix(1);
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t dot = text.find('.', start);
      if (dot == std::string_view::npos) dot = text.size();
      std::string_view piece = text.substr(start, dot - start);
      if (piece.empty()) throw std::invalid_argument("empty digit in dotted word");
      int v = 0;
      for (char c : piece) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in word: " + std::string(text));
        v = v * 10 + (c - '0');
      }
      out.push_back(v);
      start = dot + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad digit in word: " + std::string(text));
      out.push_back(c - '0');
    }
  }
  return DigitWord(std::move(out));
}

std::uint64_t DigitWord::value(int base) const {
  std::uint64_t v = 0;
  for (int d : digits_) {
    std::uint64_t next;
    if (__builtin_mul_overflow(v, static_cast<std::uint64_t>(base), &next) ||
        __builtin_add_overflow(next, static_cast<std::uint64_t>(d), &next)) {
      throw std::overflow_error("digit word value exceeds 64 bits");
    }
    v = next;
  }
  return v;
}

bool DigitWord::valid_for(int base) const {
  return std::all_of(digits_.begin(), digits_.end(),
                     [base](int d) { return d >= 0 && d < base; });
}

bool DigitWord::is_prefix_of(const DigitWord& other) const {
  return size() <= other.size() &&
         std::equal(digits_.begin(), digits_.end(), other.digits_.begin());
}

bool DigitWord::is_suffix_of(const DigitWord& other) const {
  return size() <= other.size() &&
         std::equal(digits_.rbegin(), digits_.rend(), other.digits_.rbegin());
}

bool DigitWord::occurs_in(const DigitWord& other) const {
  if (digits_.empty()) return true;
  return std::search(other.digits_.begin(), other.digits_.end(), digits_.begin(),
                     digits_.end()) != other.digits_.end();
}

DigitWord DigitWord::concat(const DigitWord& other) const {
  std::vector<int> out = digits_;
  out.insert(out.end(), other.digits_.begin(), other.digits_.end());
  return DigitWord(std::move(out));
}

std::string DigitWord::str() const {
  bool dotted = std::any_of(digits_.begin(), digits_.end(), [](int d) { return d > 9; });
  std::string out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (dotted) {
      if (i > 0) out += '.';
      out += std::to_string(digits_[i]);
    } else {
      out += static_cast<char>('0' + digits_[i]);
    }
  }
  if (dotted && digits_.size() == 1) out += '.';
  return out;
}

int expansion_length(std::uint64_t n, int base) {
  int len = 0;
  while (n > 0) {
    n /= static_cast<std::uint64_t>(base);
    ++len;
  }
  return len;
}

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
  std::uint64_t v = 1;
  for (int i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(v, base, &v)) throw std::overflow_error("power exceeds 64 bits");
  }
  return v;
}

}  // namespace autoseq
