#include "nilgrowth/echelon.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace nilgrowth {

namespace {

constexpr uint64_t kNoBit = ~uint64_t(0);

std::vector<uint64_t> to_bits(const FreeVector& v, int degree) {
  std::vector<uint64_t> bits((size_t(1) << degree) / 64 + 1, 0);
  for (const auto& [w, c] : v.terms()) {
    (void)c;  // over GF(2) every stored coefficient is 1
    uint64_t i = w.index();
    bits[i >> 6] |= uint64_t(1) << (i & 63);
  }
  return bits;
}

}  // namespace

EchelonSubspace::EchelonSubspace(const FieldSpec& f, int degree, int dense_cap)
    : field_(f), degree_(degree), dense_cap_(dense_cap) {
  if (degree < 0) throw std::invalid_argument("EchelonSubspace: negative degree");
  dense_ = (f.p() == 2 && degree <= dense_cap && degree <= 30);
}

EchelonSubspace EchelonSubspace::reduce(const FieldSpec& f, int degree,
                                        std::span<const FreeVector> gens,
                                        int dense_cap) {
  EchelonSubspace s(f, degree, dense_cap);
  for (const auto& v : gens) s.insert(v);
  return s;
}

EchelonSubspace EchelonSubspace::full_space(const FieldSpec& f, int degree,
                                            int dense_cap) {
  if (degree > dense_cap)
    throw capacity_error("full_space: degree above dense cap", degree);
  EchelonSubspace s(f, degree, dense_cap);
  for (const Word& w : enumerate_words(degree, dense_cap))
    s.insert(FreeVector::unit(w));
  return s;
}

uint64_t EchelonSubspace::lowest_bit(const std::vector<uint64_t>& bits) {
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) return i * 64 + static_cast<uint64_t>(__builtin_ctzll(bits[i]));
  }
  return kNoBit;
}

void EchelonSubspace::insert_dense(std::vector<uint64_t> bits) {
  // Forward-eliminate by existing rows, in pivot order.
  for (size_t r = 0; r < drows_.size(); ++r) {
    uint64_t p = pivots_[r].index();
    if (bits[p >> 6] >> (p & 63) & 1) {
      const auto& row = drows_[r];
      for (size_t i = 0; i < bits.size(); ++i) bits[i] ^= row[i];
    }
  }
  uint64_t pv = lowest_bit(bits);
  if (pv == kNoBit) return;
  // Back-eliminate the new pivot from existing rows.
  for (auto& row : drows_) {
    if (row[pv >> 6] >> (pv & 63) & 1) {
      for (size_t i = 0; i < bits.size(); ++i) row[i] ^= bits[i];
    }
  }
  Word pw = Word::from_index(degree_, pv);
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pw);
  size_t idx = static_cast<size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pw);
  drows_.insert(drows_.begin() + idx, std::move(bits));
}

bool EchelonSubspace::insert(const FreeVector& v) {
  if (v.degree() != degree_)
    throw std::invalid_argument("EchelonSubspace::insert: degree mismatch");
  if (v.is_zero()) return false;
  size_t before = pivots_.size();
  if (dense_) {
    insert_dense(to_bits(v, degree_));
    return pivots_.size() > before;
  }
  // Sparse path.
  FreeVector r = residual(v);
  if (r.is_zero()) return false;
  uint32_t lead = r.terms().front().second;
  r = r.scale(field_.inv(lead), field_);
  const Word& pw = r.pivot();
  // Back-eliminate from existing rows.
  for (size_t i = 0; i < srows_.size(); ++i) {
    FreeVector row(degree_);
    row = this->row(i);
    uint32_t c = row.coeff(pw);
    if (c) {
      FreeVector updated = row.sub(r.scale(c, field_), field_);
      srows_[i].assign(updated.terms().begin(), updated.terms().end());
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pw);
  size_t idx = static_cast<size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pw);
  srows_.insert(srows_.begin() + idx,
                std::vector<FreeVector::Term>(r.terms().begin(), r.terms().end()));
  return true;
}

FreeVector EchelonSubspace::residual(const FreeVector& v) const {
  if (v.degree() != degree_)
    throw std::invalid_argument("EchelonSubspace::residual: degree mismatch");
  if (dense_) {
    auto bits = to_bits(v, degree_);
    for (size_t r = 0; r < drows_.size(); ++r) {
      uint64_t p = pivots_[r].index();
      if (bits[p >> 6] >> (p & 63) & 1) {
        const auto& row = drows_[r];
        for (size_t i = 0; i < bits.size(); ++i) bits[i] ^= row[i];
      }
    }
    std::vector<FreeVector::Term> terms;
    for (size_t i = 0; i < bits.size(); ++i) {
      uint64_t block = bits[i];
      while (block) {
        int b = __builtin_ctzll(block);
        block &= block - 1;
        terms.emplace_back(Word::from_index(degree_, i * 64 + b), 1);
      }
    }
    return FreeVector::make(degree_, std::move(terms), field_);
  }
  FreeVector r = v;
  for (size_t i = 0; i < srows_.size(); ++i) {
    uint32_t c = r.coeff(pivots_[i]);
    if (c) r = r.sub(row(i).scale(c, field_), field_);
  }
  return r;
}

bool EchelonSubspace::contains(const FreeVector& v) const {
  return residual(v).is_zero();
}

FreeVector EchelonSubspace::row(size_t i) const {
  if (dense_) {
    const auto& bits = drows_[i];
    std::vector<FreeVector::Term> terms;
    for (size_t j = 0; j < bits.size(); ++j) {
      uint64_t block = bits[j];
      while (block) {
        int b = __builtin_ctzll(block);
        block &= block - 1;
        terms.emplace_back(Word::from_index(degree_, j * 64 + b), 1);
      }
    }
    return FreeVector::make(degree_, std::move(terms), field_);
  }
  FreeVector v(degree_);
  std::vector<FreeVector::Term> terms(srows_[i].begin(), srows_[i].end());
  return FreeVector::make(degree_, std::move(terms), field_);
}

std::vector<FreeVector> EchelonSubspace::rows() const {
  std::vector<FreeVector> out;
  out.reserve(dim());
  for (size_t i = 0; i < dim(); ++i) out.push_back(row(i));
  return out;
}

bool EchelonSubspace::same_space(const EchelonSubspace& o) const {
  if (degree_ != o.degree_ || field_.p() != o.field_.p()) return false;
  if (dim() != o.dim() || pivots_ != o.pivots_) return false;
  for (size_t i = 0; i < dim(); ++i) {
    if (!(row(i) == o.row(i))) return false;
  }
  return true;
}

EchelonSubspace span_product(const EchelonSubspace& a, const EchelonSubspace& b) {
  if (a.field().p() != b.field().p())
    throw std::invalid_argument("span_product: field mismatch");
  EchelonSubspace out(a.field(), a.degree() + b.degree(),
                      std::max(a.dense_cap(), b.dense_cap()));
  auto arows = a.rows();
  auto brows = b.rows();
  for (const auto& u : arows) {
    for (const auto& v : brows) out.insert(u.mul(v, a.field()));
  }
  return out;
}

EchelonSubspace span_sum(const EchelonSubspace& a, const EchelonSubspace& b) {
  if (a.degree() != b.degree() || a.field().p() != b.field().p())
    throw std::invalid_argument("span_sum: degree or field mismatch");
  EchelonSubspace out = a;
  for (const auto& v : b.rows()) out.insert(v);
  return out;
}

EchelonSubspace word_complement(const EchelonSubspace& s) {
  if (s.degree() > s.dense_cap())
    throw capacity_error("word_complement: degree above dense cap", s.degree());
  EchelonSubspace out(s.field(), s.degree(), s.dense_cap());
  const auto& piv = s.pivots();
  size_t pi = 0;
  for (const Word& w : enumerate_words(s.degree(), s.dense_cap())) {
    while (pi < piv.size() && piv[pi] < w) ++pi;
    if (pi < piv.size() && piv[pi] == w) continue;
    out.insert(FreeVector::unit(w));
  }
  return out;
}

EchelonSubspace nullspace_of(const EchelonSubspace& rows) {
  const int degree = rows.degree();
  if (degree > rows.dense_cap() || degree > 14) {
    throw capacity_error("nullspace_of: degree above dense cap", degree);
  }
  const FieldSpec& f = rows.field();
  // RREF pivot columns are standard: the kernel basis vector attached to a
  // non-pivot word u is e_u - sum_i R_i[u] e_{pivot_i}.
  const auto& piv = rows.pivots();
  std::vector<FreeVector> rr = rows.rows();
  std::unordered_map<Word, std::vector<FreeVector::Term>, WordHash> corr;
  for (size_t i = 0; i < rr.size(); ++i) {
    for (const auto& [u, c] : rr[i].terms()) {
      if (u == piv[i]) continue;
      corr[u].emplace_back(piv[i], f.neg(c));
    }
  }
  EchelonSubspace out(f, degree, rows.dense_cap());
  size_t pi = 0;
  for (const Word& w : enumerate_words(degree, rows.dense_cap())) {
    while (pi < piv.size() && piv[pi] < w) ++pi;
    if (pi < piv.size() && piv[pi] == w) continue;
    std::vector<FreeVector::Term> terms{{w, 1}};
    auto it = corr.find(w);
    if (it != corr.end()) {
      terms.insert(terms.end(), it->second.begin(), it->second.end());
    }
    out.insert(FreeVector::make(degree, std::move(terms), f));
  }
  return out;
}

std::vector<Word> word_complement_within(const EchelonSubspace& s,
                                         std::span<const Word> within) {
  std::vector<Word> ws(within.begin(), within.end());
  std::sort(ws.begin(), ws.end());
  if (std::adjacent_find(ws.begin(), ws.end()) != ws.end())
    throw std::invalid_argument("word_complement_within: duplicate words");
  EchelonSubspace acc = s;
  std::vector<Word> picked;
  for (const Word& w : ws) {
    if (acc.insert(FreeVector::unit(w))) picked.push_back(w);
  }
  return picked;
}

}  // namespace nilgrowth
