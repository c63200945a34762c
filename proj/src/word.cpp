#include "nilgrowth/word.hpp"

#include <stdexcept>

namespace nilgrowth {

namespace {

// 256-bit little-endian helpers on std::array<uint64_t, 4>.
using Limbs = std::array<uint64_t, 4>;

Limbs shl(const Limbs& a, int s) {
  Limbs r{};
  int limb = s >> 6, bits = s & 63;
  for (int i = 3; i >= 0; --i) {
    uint64_t v = 0;
    int src = i - limb;
    if (src >= 0) {
      v = a[src] << bits;
      if (bits && src - 1 >= 0) v |= a[src - 1] >> (64 - bits);
    }
    r[i] = v;
  }
  return r;
}

Limbs shr(const Limbs& a, int s) {
  Limbs r{};
  int limb = s >> 6, bits = s & 63;
  for (int i = 0; i < 4; ++i) {
    uint64_t v = 0;
    int src = i + limb;
    if (src < 4) {
      v = a[src] >> bits;
      if (bits && src + 1 < 4) v |= a[src + 1] << (64 - bits);
    }
    r[i] = v;
  }
  return r;
}

void mask_low(Limbs& a, int n) {  // keep the low n bits
  for (int i = 0; i < 4; ++i) {
    int lo = i * 64;
    if (n <= lo) {
      a[i] = 0;
    } else if (n < lo + 64) {
      a[i] &= (uint64_t(1) << (n - lo)) - 1;
    }
  }
}

}  // namespace

Word Word::from_index(int n, uint64_t index) {
  if (n < 0 || n > 63) throw std::invalid_argument("from_index: length must be in [0, 63]");
  if (n < 64 && index >> n) throw std::invalid_argument("from_index: index out of range");
  Word w;
  w.len_ = n;
  w.v_[0] = index;
  return w;
}

Word Word::parse(std::string_view s) {
  if (s == "1") return Word();
  if (s.size() > size_t(kMaxLen)) throw std::invalid_argument("word too long");
  Word w;
  w.len_ = static_cast<int>(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    int bit = w.len_ - 1 - static_cast<int>(i);
    if (s[i] == 'y') {
      w.v_[bit >> 6] |= uint64_t(1) << (bit & 63);
    } else if (s[i] != 'x') {
      throw std::invalid_argument("word letters must be x or y: " + std::string(s));
    }
  }
  return w;
}

Word Word::repeated(int letter, int n) {
  if (n < 0 || n > kMaxLen) throw std::invalid_argument("repeated: bad length");
  Word w;
  w.len_ = n;
  if (letter) {
    for (int bit = 0; bit < n; ++bit) w.v_[bit >> 6] |= uint64_t(1) << (bit & 63);
  }
  return w;
}

Word Word::concat(const Word& rhs) const {
  if (len_ + rhs.len_ > kMaxLen)
    throw capacity_error("word concatenation exceeds the packed length limit",
                         len_ + rhs.len_);
  Word w;
  w.len_ = len_ + rhs.len_;
  w.v_ = shl(v_, rhs.len_);
  for (int i = 0; i < 4; ++i) w.v_[i] |= rhs.v_[i];
  return w;
}

Word Word::subword(int pos, int len) const {
  if (pos < 0 || len < 0 || pos + len > len_)
    throw std::invalid_argument("subword out of range");
  Word w;
  w.len_ = len;
  w.v_ = shr(v_, len_ - pos - len);
  mask_low(w.v_, len);
  return w;
}

std::string Word::str() const {
  std::string s;
  s.reserve(len_);
  for (int i = 0; i < len_; ++i) s.push_back(letter(i) ? 'y' : 'x');
  return s;
}

std::vector<Word> enumerate_words(int n, int cap) {
  if (n < 0) throw std::invalid_argument("enumerate_words: negative degree");
  if (n > cap)
    throw capacity_error("enumerate_words: degree " + std::to_string(n) +
                             " above dense cap " + std::to_string(cap),
                         n);
  std::vector<Word> out;
  out.reserve(size_t(1) << n);
  for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) out.push_back(Word::from_index(n, v));
  return out;
}

std::vector<int> binary_expansion(uint64_t n) {
  if (n == 0) throw std::invalid_argument("binary_expansion: argument must be positive");
  std::vector<int> out;
  for (int b = 0; b < 64; ++b) {
    if (n >> b & 1) out.push_back(b);
  }
  return out;
}

}  // namespace nilgrowth
