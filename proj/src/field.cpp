#include "nilgrowth/field.hpp"

#include <stdexcept>
#include <string>

namespace nilgrowth {

bool is_prime_u32(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(uint32_t p) : p_(p) {
  if (p < 2 || uint64_t(p) > (uint64_t(1) << 31))
    throw std::invalid_argument("field characteristic out of range [2, 2^31]: " +
                                std::to_string(p));
  if (!is_prime_u32(p))
    throw std::invalid_argument("field characteristic is not prime: " +
                                std::to_string(p));
}

uint32_t FieldSpec::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1 % p_;
  uint32_t b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

uint32_t FieldSpec::inv(uint32_t a) const {
  if (a == 0) throw std::invalid_argument("inverse of zero");
  // Extended Euclid on (a, p).
  int64_t t = 0, newt = 1;
  int64_t r = p_, newr = a;
  while (newr != 0) {
    int64_t q = r / newr;
    int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<uint32_t>(t);
}

}  // namespace nilgrowth
