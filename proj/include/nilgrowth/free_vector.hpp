#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilgrowth/field.hpp"
#include "nilgrowth/word.hpp"

namespace nilgrowth {

// A homogeneous element of the graded component A(n): a finitely supported
// GF(p) combination of words of one common length n.  Terms are kept sorted
// by the fixed word order with nonzero coefficients.
class FreeVector {
public:
  using Term = std::pair<Word, uint32_t>;

  explicit FreeVector(int degree = 0) : degree_(degree) {}
  static FreeVector unit(const Word& w) {
    FreeVector v(w.length());
    v.terms_.emplace_back(w, 1);
    return v;
  }
  // Normalizes: sorts, merges duplicates, drops zeros.  All words must have
  // length `degree`.
  static FreeVector make(int degree, std::vector<Term> terms, const FieldSpec& f);

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  size_t support_size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Word& pivot() const { return terms_.front().first; }  // order-least word
  uint32_t coeff(const Word& w) const;

  FreeVector add(const FreeVector& o, const FieldSpec& f) const;
  FreeVector sub(const FreeVector& o, const FieldSpec& f) const;
  FreeVector scale(uint32_t c, const FieldSpec& f) const;
  // Concatenation product A(m) x A(n) -> A(m+n).
  FreeVector mul(const FreeVector& o, const FieldSpec& f) const;

  bool operator==(const FreeVector& o) const = default;

  // "2*xy + yx" style rendering; "0" for the zero vector, "1" for the empty
  // word.  Coefficient 1 is omitted.
  std::string str() const;
  // Inverse of str().  Accepts '-' (mapped to p - c) and optional spaces.
  // expected_degree -1 infers the degree from the first term; the zero
  // string "0" then parses to degree 0.
  static FreeVector parse(std::string_view s, const FieldSpec& f,
                          int expected_degree = -1);

private:
  int degree_;
  std::vector<Term> terms_;
};

}  // namespace nilgrowth
