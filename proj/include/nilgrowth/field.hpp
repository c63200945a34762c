#pragma once

#include <cstdint>

namespace nilgrowth {

bool is_prime_u32(uint64_t n);

// The prime field GF(p), 2 <= p < 2^31.  Scalars are uint32_t in [0, p).
// All arithmetic is exact; no floating point anywhere.
class FieldSpec {
public:
  explicit FieldSpec(uint32_t p);

  uint32_t p() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;  // p < 2^31, no overflow
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((uint64_t(a) * b) % p_);
  }
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t e) const;
  // Canonical representative of an arbitrary signed value.
  uint32_t reduce_int(int64_t v) const {
    int64_t r = v % int64_t(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }

  bool operator==(const FieldSpec&) const = default;

private:
  uint32_t p_;
};

}  // namespace nilgrowth
