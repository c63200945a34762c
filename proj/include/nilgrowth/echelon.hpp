#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nilgrowth/common.hpp"
#include "nilgrowth/free_vector.hpp"

namespace nilgrowth {

// A subspace of A(n) in reduced row-echelon form with respect to the fixed
// word order: rows are kept in increasing pivot order, each pivot is the
// order-least support word of its row with coefficient 1, and no other row's
// support meets any pivot word.  The representation is canonical: two equal
// subspaces have identical rows.
//
// Storage: over GF(2) with degree <= dense_cap, rows are 2^n-bit blocks and
// elimination is word-sized XOR.  Otherwise rows are sparse sorted
// (word, scalar) lists.
class EchelonSubspace {
public:
  EchelonSubspace(const FieldSpec& f, int degree, int dense_cap = kDefaultDenseCap);

  static EchelonSubspace reduce(const FieldSpec& f, int degree,
                                std::span<const FreeVector> gens,
                                int dense_cap = kDefaultDenseCap);
  // All of A(n).  Capacity-guarded (materializes 2^n rows).
  static EchelonSubspace full_space(const FieldSpec& f, int degree,
                                    int dense_cap = kDefaultDenseCap);

  // Adds a vector to the span; returns true when the dimension grew.
  bool insert(const FreeVector& v);
  bool contains(const FreeVector& v) const;
  // Residual of v after elimination by the rows (zero iff contained).
  FreeVector residual(const FreeVector& v) const;

  size_t dim() const { return pivots_.size(); }
  int degree() const { return degree_; }
  const FieldSpec& field() const { return field_; }
  int dense_cap() const { return dense_cap_; }
  const std::vector<Word>& pivots() const { return pivots_; }
  std::vector<FreeVector> rows() const;
  FreeVector row(size_t i) const;

  bool same_space(const EchelonSubspace& o) const;

private:
  bool dense() const { return dense_; }
  void insert_dense(std::vector<uint64_t> bits);
  static uint64_t lowest_bit(const std::vector<uint64_t>& bits);

  FieldSpec field_;
  int degree_;
  int dense_cap_;
  bool dense_;
  std::vector<Word> pivots_;                           // sorted ascending
  std::vector<std::vector<uint64_t>> drows_;           // dense GF(2) rows
  std::vector<std::vector<FreeVector::Term>> srows_;   // sparse rows
};

// Span of all pairwise concatenation products of rows.
EchelonSubspace span_product(const EchelonSubspace& a, const EchelonSubspace& b);
// Span of the union of rows.
EchelonSubspace span_sum(const EchelonSubspace& a, const EchelonSubspace& b);

// The span of all degree-n words that are not pivots of s; satisfies
// s (+) complement = A(n).  Capacity-guarded.
EchelonSubspace word_complement(const EchelonSubspace& s);
// Kernel of the word-coordinate pairing against every row of `rows`:
// { v : sum_w row[w] v[w] = 0 for all rows }.  Capacity-guarded (walks all
// 2^n words of the degree).
EchelonSubspace nullspace_of(const EchelonSubspace& rows);
// Greedy variant inside span(within) + s: picks words from `within`, in the
// fixed word order, that are independent modulo s and the words picked so
// far.  `within` must not contain duplicates.  The result c satisfies
// s (+) span(c) = s + span(within).
std::vector<Word> word_complement_within(const EchelonSubspace& s,
                                         std::span<const Word> within);

}  // namespace nilgrowth
