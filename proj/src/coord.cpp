#include "nilgrowth/coord.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilgrowth {

bool coord_is_zero(const CoordVec& v) {
  return std::all_of(v.begin(), v.end(), [](uint32_t c) { return c == 0; });
}

CoordVec coord_add(const CoordVec& a, const CoordVec& b, const FieldSpec& f) {
  CoordVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

CoordVec coord_scale(const CoordVec& a, uint32_t c, const FieldSpec& f) {
  CoordVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
  return r;
}

void coord_add_scaled_inplace(CoordVec& a, const CoordVec& b, uint32_t c,
                              const FieldSpec& f) {
  for (size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], f.mul(b[i], c));
}

CoordVec coord_tensor(const CoordVec& a, const CoordVec& b, const FieldSpec& f) {
  CoordVec r(a.size() * b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    size_t base = i * b.size();
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j]) r[base + j] = f.mul(a[i], b[j]);
    }
  }
  return r;
}

bool CoordSpan::insert(CoordVec v) {
  if (v.size() != ambient_)
    throw std::invalid_argument("CoordSpan::insert: dimension mismatch");
  v = residual(std::move(v));
  size_t pv = ambient_;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i]) {
      pv = i;
      break;
    }
  }
  if (pv == ambient_) return false;
  if (v[pv] != 1) {
    uint32_t inv = field_.inv(v[pv]);
    for (auto& c : v) c = field_.mul(c, inv);
  }
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t c = rows_[r][pv];
    if (c) coord_add_scaled_inplace(rows_[r], v, field_.neg(c), field_);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pv);
  size_t idx = static_cast<size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pv);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

CoordVec CoordSpan::residual(CoordVec v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t c = v[pivots_[r]];
    if (c) coord_add_scaled_inplace(v, rows_[r], field_.neg(c), field_);
  }
  return v;
}

bool CoordSpan::contains(const CoordVec& v) const {
  return coord_is_zero(residual(v));
}

bool CoordSpan::same_space(const CoordSpan& o) const {
  return ambient_ == o.ambient_ && pivots_ == o.pivots_ && rows_ == o.rows_;
}

size_t CoordSpan::first_nonpivot_from(size_t start) const {
  size_t idx = static_cast<size_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), start) - pivots_.begin());
  size_t c = start;
  while (idx < pivots_.size() && pivots_[idx] == c) {
    ++idx;
    ++c;
  }
  return c <= ambient_ ? c : ambient_;
}

std::vector<CoordVec> projection_along(const CoordSpan& kernel, size_t i1,
                                       size_t i2) {
  const FieldSpec& f = kernel.field();
  size_t t = kernel.ambient_dim();
  if (kernel.dim() + 2 != t)
    throw std::invalid_argument("projection_along: kernel must have codimension 2");
  // Solve M * q = rhs for the two dual functionals, where M's rows are the
  // kernel rows followed by e_i1 and e_i2.  Gauss-Jordan on [M | I2-block].
  std::vector<CoordVec> m(t, CoordVec(t + 2, 0));
  for (size_t r = 0; r < kernel.dim(); ++r) {
    std::copy(kernel.rows()[r].begin(), kernel.rows()[r].end(), m[r].begin());
  }
  m[t - 2][i1] = 1;
  m[t - 2][t] = 1;
  m[t - 1][i2] = 1;
  m[t - 1][t + 1] = 1;

  size_t rank = 0;
  for (size_t col = 0; col < t && rank < t; ++col) {
    size_t sel = t;
    for (size_t r = rank; r < t; ++r) {
      if (m[r][col]) {
        sel = r;
        break;
      }
    }
    if (sel == t) continue;
    std::swap(m[rank], m[sel]);
    uint32_t inv = f.inv(m[rank][col]);
    for (auto& c : m[rank]) c = f.mul(c, inv);
    for (size_t r = 0; r < t; ++r) {
      if (r == rank) continue;
      uint32_t c = m[r][col];
      if (c) coord_add_scaled_inplace(m[r], m[rank], f.neg(c), f);
    }
    ++rank;
  }
  if (rank != t)
    throw std::invalid_argument("projection_along: kernel + units do not span");
  // After Gauss-Jordan, row r has pivot column r; solution alpha_c is the
  // augmented entry of the row whose pivot is column c.
  std::vector<CoordVec> q(2, CoordVec(t, 0));
  for (size_t r = 0; r < t; ++r) {
    q[0][r] = m[r][t];
    q[1][r] = m[r][t + 1];
  }
  return q;
}

}  // namespace nilgrowth
