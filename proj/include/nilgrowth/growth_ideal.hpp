#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilgrowth/echelon.hpp"
#include "nilgrowth/free_vector.hpp"
#include "nilgrowth/schedule.hpp"
#include "nilgrowth/tower.hpp"

namespace nilgrowth {

// One side of the two-sided collapse at degree n (2^m <= n < 2^{m+1}):
// the kernel
//   left:   { v in A(n) : pi_{m+1}(v b) = 0 for every word b }
//   right:  { v in A(n) : pi_{m+1}(b v) = 0 for every word b }
// together with the chain words chosen to complete it to A(n).
struct BoundaryPair {
  EchelonSubspace kernel;
  std::vector<Word> complement;
  bool complete = false;  // kernel (+) span(complement) = A(n)
};

struct BoundarySpaces {
  int64_t n = 0;
  BoundaryPair left;
  BoundaryPair right;

  nlohmann::ordered_json to_json() const;
};

// Products of one level-basis word per term of the binary expansion of n,
// in ascending (lowest level leftmost) or descending level order; sorted.
std::vector<Word> chain_words(const Tower& tw, int64_t n, bool ascending);

// Computes both boundary kernels of degree n by exact elimination over all
// words b, and completes them with descending (left) / ascending (right)
// chain words.  Dense in A(n): requires n <= 12 and tower depth.
BoundarySpaces boundary_spaces(const Tower& tw, int64_t n);

// The degree-n component of the vanishing ideal: v lies in it iff
//   A(j) v A(2^{m+2} - n - j)  maps to zero under pi_{m+1} (x) pi_{m+1}
// for every aligned split position j.  Dense: requires n <= 7.
EchelonSubspace ideal_component(const Tower& tw, int64_t n);

// Independent brute-force oracle for ideal_component, n <= 3: eliminates
// against the materialized two-sided kernel span U A + A U of the aligned
// degree instead of against projections.
EchelonSubspace ideal_component_oracle(const Tower& tw, int64_t n);

// dim A(n) / I(n); exact, requires n <= 7 (n = 0 gives 1).
uint64_t quotient_dim(const Tower& tw, int64_t n);

struct IdealSliceCheck {
  int64_t j = 0;        // left cofactor degree
  size_t span_dim = 0;  // dim of the projected image span; 0 = annihilated
};

struct IdealCertificate {
  std::string element;
  int64_t degree = 0;
  int64_t m = 0;  // alignment exponent: 2^m <= degree < 2^{m+1}
  std::vector<IdealSliceCheck> checks;
  bool contained = false;

  nlohmann::ordered_json to_json() const;
};

// Ideal membership for a homogeneous element of any degree the tower can
// align (degree < 2^{max_level}): every two-sided slice is driven through
// the stacked family span, no dense ambient space is materialized.  The
// certificate records the image dimension of every slice.
IdealCertificate ideal_contains(const Tower& tw, const FreeVector& v);

struct NilCertificate {
  std::string element;
  uint64_t exponent = 0;
  int64_t degree = 0;            // degree of element^exponent
  bool nilpotent_witness = false;  // element^exponent lies in the ideal
  IdealCertificate ideal;

  nlohmann::ordered_json to_json() const;
};

// Raises the (homogeneous) element to the given power and certifies ideal
// membership of the result.
NilCertificate nil_check(const Tower& tw, const FreeVector& element,
                         uint64_t exponent);

struct HilbertRow {
  int64_t n = 0;
  uint64_t exact_dim = 0;    // dim A(n)/I(n)
  mpz_class upper_bound;     // sum_j |L'(j)| |R'(n-j)|
  mpz_class n_pow_alpha;     // floor(n^alpha(n)) from the exact lower bound
  bool within = false;       // exact_dim <= upper_bound
};

// Rows n = 0..n_max (n_max <= 7: the exact column is dense).
std::vector<HilbertRow> hilbert_table(const Tower& tw, int64_t n_max,
                                      const AlphaSpec& alpha);
std::string hilbert_csv(const std::vector<HilbertRow>& rows);

struct GrowthRow {
  int64_t level = 0;
  mpz_class chain_dim;  // prod_{l <= level} dim V(2^l)
  mpz_class bound;      // 2^{2 level + sum over started ramps of 2^{g+1}}
  bool within = false;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

// Checks the chain-dimension estimate level by level: once a collapse ramp
// has started (f(i) - g(i) - 1 <= level), its factor 2^{2^{g(i)+1}} is
// charged in full; outside the ramps each level contributes at most 4.
GrowthReport growth_check(const Tower& tw, int64_t level_max);

}  // namespace nilgrowth
