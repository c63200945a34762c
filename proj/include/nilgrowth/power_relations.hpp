#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilgrowth/echelon.hpp"
#include "nilgrowth/field.hpp"
#include "nilgrowth/free_vector.hpp"
#include "nilgrowth/word.hpp"

namespace nilgrowth {

// All d-tuples (i_1..i_d) of nonnegative exponents with sum(i_e) = m and
// sum(i_e * |gens_e|) = target_len, in lexicographic order.
std::vector<std::vector<int64_t>> exponent_sequences(
    const std::vector<Word>& gens, int64_t m, int64_t target_len);

// Coefficient of t_1^{i_1}..t_d^{i_d} in (gens_1 t_1 + .. + gens_d t_d)^m,
// m = sum of the exponents: the GF(p) sum, over all distinct arrangements of
// the multiset {gens_e with multiplicity i_e}, of the concatenated word.
// Repeated-word collisions cancel mod p.
FreeVector multiset_coefficient(const std::vector<Word>& gens,
                                const std::vector<int64_t>& exponents,
                                const FieldSpec& f);

// Product of lambda_{seq[e]} over an index sequence (the weight a word
// w_{i_1}..w_{i_m} picks up from y = sum lambda_e w_e); multiplicative under
// concatenation of sequences.
uint32_t lambda_weight(const std::vector<uint32_t>& lambda,
                       const std::vector<int>& index_seq, const FieldSpec& f);

// Homogeneous components of (sum_e lambda_e gens_e)^m, keyed by degree.
std::map<int64_t, FreeVector> mixed_power(const std::vector<Word>& gens,
                                          const std::vector<uint32_t>& lambda,
                                          int64_t m, const FieldSpec& f);

// Dimension bound (n+1)^d * 2 deg^2 * 4^deg for the power-relation space,
// deg = max generator length.
uint64_t power_relation_dim_bound(const std::vector<Word>& gens, int64_t n);

// The degree-n power-relation space attached to a finite word set:
//   Y = sum over 1 <= m <= n, j < 2 deg, i <= max(j, deg - 1) of
//       A(i) . C(seq) . A(j - i),   seq in E(m, j),
// where E(m, j) collects the exponent sequences with total m and length
// n - j.  Negative-degree factors contribute nothing, so effectively i <= j.
EchelonSubspace power_relation_space(const std::vector<Word>& gens, int64_t n,
                                     const FieldSpec& f,
                                     int dense_cap = kDefaultDenseCap);

// Dense span of sum_k A(kn) . Y . A(D - (k+1)n) inside A(D); empty when
// D < n.  Requires D within the dense cap.
EchelonSubspace power_span(const EchelonSubspace& y, int64_t n, int64_t D);

// Membership in sum_k A(kn) . Y . A(D - (k+1)n) for arbitrary D, decided in
// the telescoped quotient (A(n)/Y)^{(x)q} (x) A(r) with D = qn + r: a vector
// lies in the sum iff its image under the blockwise reduction map vanishes.
// No dense ambient basis of A(D) is materialized.
class PowerSpanMembership {
public:
  PowerSpanMembership(EchelonSubspace y, int64_t n);

  bool contains(const FreeVector& v) const;
  int64_t block_degree() const { return n_; }
  size_t quotient_dim() const { return cowords_.size(); }

private:
  EchelonSubspace y_;
  int64_t n_;
  std::vector<Word> cowords_;  // non-pivot words of A(n), sorted
  std::unordered_map<Word, size_t, WordHash> coindex_;
};

struct PowerCheckFailure {
  std::vector<uint32_t> lambda;
  std::string left_factor;
  int64_t degree;
};

struct PowerContainmentReport {
  std::vector<Word> gens;
  int64_t n = 0;
  uint32_t p = 2;
  size_t dim_y = 0;
  uint64_t dim_bound = 0;
  bool exhaustive = true;
  uint64_t lambdas_checked = 0;
  uint64_t checks_run = 0;
  std::vector<PowerCheckFailure> failures;

  bool pass() const { return failures.empty() && dim_y <= dim_bound; }
};

// Checks a . y^{2n} in sum_k A(kn) Y A for every word |a| < n and every
// y = sum lambda_e gens_e in the sweep: exhaustive over GF(p)^d when
// sample_count == 0 (requires p^d <= 4096), else sample_count draws seeded
// by `seed`.  Every homogeneous component is checked separately.
PowerContainmentReport verify_power_containment(const std::vector<Word>& gens,
                                                int64_t n, const FieldSpec& f,
                                                uint64_t sample_count,
                                                uint64_t seed);

}  // namespace nilgrowth
