#pragma once

#include <cstdint>
#include <vector>

#include "nilgrowth/field.hpp"

namespace nilgrowth {

// Dense GF(p) linear algebra on small coordinate spaces (tower level data,
// projection images, stacked family spans).  Row-reduced echelon form with
// pivot = least column index, canonical like EchelonSubspace.
using CoordVec = std::vector<uint32_t>;

bool coord_is_zero(const CoordVec& v);
CoordVec coord_add(const CoordVec& a, const CoordVec& b, const FieldSpec& f);
CoordVec coord_scale(const CoordVec& a, uint32_t c, const FieldSpec& f);
void coord_add_scaled_inplace(CoordVec& a, const CoordVec& b, uint32_t c,
                              const FieldSpec& f);
// Kronecker product; index layout (i, j) -> i * |b| + j.
CoordVec coord_tensor(const CoordVec& a, const CoordVec& b, const FieldSpec& f);

class CoordSpan {
public:
  CoordSpan(const FieldSpec& f, size_t ambient_dim)
      : field_(f), ambient_(ambient_dim) {}

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return rows_.size(); }
  const FieldSpec& field() const { return field_; }
  const std::vector<CoordVec>& rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  bool insert(CoordVec v);  // true when the dimension grew
  CoordVec residual(CoordVec v) const;
  bool contains(const CoordVec& v) const;
  bool same_space(const CoordSpan& o) const;

  // Least ambient index not covered by a pivot; ambient_dim() when full.
  size_t first_nonpivot_from(size_t start) const;

private:
  FieldSpec field_;
  size_t ambient_;
  std::vector<CoordVec> rows_;    // in increasing pivot order
  std::vector<size_t> pivots_;
};

// Solves the projection problem behind the tower level maps: given an
// echelon kernel K and two ambient unit indices i1, i2 with
// K (+) <e_i1, e_i2> = full space, returns the 2 x ambient matrix Q of the
// projection onto <e_i1, e_i2> along K (rows: the i1- and i2-functionals).
std::vector<CoordVec> projection_along(const CoordSpan& kernel, size_t i1,
                                       size_t i2);

}  // namespace nilgrowth
