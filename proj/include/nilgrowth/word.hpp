#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nilgrowth/common.hpp"

namespace nilgrowth {

// Bit-packed words over the two-letter alphabet {x, y}.
//
// A word of length n is identified with the n-bit integer whose binary
// digits, read from the most significant of the n bits, spell the word with
// x = 0 and y = 1.  The fixed total order used everywhere (pivots,
// complements, tie-breaks) is: shorter words first, equal lengths by that
// integer value.  On equal lengths this is lexicographic order with x < y.
class Word {
public:
  static constexpr int kMaxLen = 256;

  Word() : len_(0), v_{} {}  // the empty word

  // Word of length n whose integer value is `index`; requires n <= 63.
  static Word from_index(int n, uint64_t index);
  // Parses "xyx" style strings; "" and "1" denote the empty word.
  static Word parse(std::string_view s);
  static Word repeated(int letter, int n);  // x^n or y^n

  int length() const { return len_; }
  // Letter at position i counted from the left, 0 = x, 1 = y.
  int letter(int i) const {
    int bit = len_ - 1 - i;
    return static_cast<int>((v_[bit >> 6] >> (bit & 63)) & 1);
  }
  // Integer value; requires length <= 63.
  uint64_t index() const { return v_[0]; }

  Word concat(const Word& rhs) const;
  // Subword of `len` letters starting at position `pos` (from the left).
  Word subword(int pos, int len) const;

  std::string str() const;

  std::strong_ordering operator<=>(const Word& o) const {
    if (len_ != o.len_) return len_ <=> o.len_;
    for (int i = 3; i >= 0; --i) {
      if (v_[i] != o.v_[i]) return v_[i] <=> o.v_[i];
    }
    return std::strong_ordering::equal;
  }
  bool operator==(const Word& o) const {
    return len_ == o.len_ && v_ == o.v_;
  }

  size_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull + uint64_t(len_);
    for (uint64_t limb : v_) {
      h ^= limb + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }

private:
  int len_;
  std::array<uint64_t, 4> v_;  // value, little-endian limbs
};

struct WordHash {
  size_t operator()(const Word& w) const { return w.hash(); }
};

// All 2^n words of length n in the fixed order.  Capacity-guarded.
std::vector<Word> enumerate_words(int n, int cap = kDefaultDenseCap);

// Exponents of the binary expansion in increasing order: 13 -> {0, 2, 3}.
// n must be positive.
std::vector<int> binary_expansion(uint64_t n);

}  // namespace nilgrowth
