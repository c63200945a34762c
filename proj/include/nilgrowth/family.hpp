#pragma once

#include <cstdint>
#include <vector>

#include "nilgrowth/coord.hpp"
#include "nilgrowth/free_vector.hpp"
#include "nilgrowth/tower.hpp"

namespace nilgrowth {

// One slot of a concatenation pattern: either "any word of length len" or a
// fixed homogeneous vector.  A pattern denotes the family of products
// obtained by instantiating every free slot independently.
struct PatternSlot {
  bool free = true;
  int64_t len = 0;      // free slots; fixed slots carry their degree
  FreeVector fixed;

  static PatternSlot any(int64_t len) {
    PatternSlot s;
    s.free = true;
    s.len = len;
    return s;
  }
  static PatternSlot of(FreeVector v) {
    PatternSlot s;
    s.free = false;
    s.len = v.degree();
    s.fixed = std::move(v);
    return s;
  }
};

using Pattern = std::vector<PatternSlot>;

int64_t pattern_degree(const Pattern& pattern);

// Span of pi_k over every instantiation of the pattern (total degree 2^k),
// as a subspace of the V(2^k) coordinate space.  Exact: free slots are not
// sampled; the recursion tracks correlated halves of fixed slots through
// stacked parallel families, and bilinearity of the halving maps reduces
// each combination step to basis pairs.
CoordSpan family_span(const Tower& tw, int k, const Pattern& pattern);

// Span of (pi_level (x) pi_level) over every instantiation of a pattern of
// total degree 2^{level+1}, inside the tensor-square coordinate space of
// dimension dim V(2^level)^2.  The top halving map is not applied.
CoordSpan pair_span(const Tower& tw, int level, const Pattern& pattern);

}  // namespace nilgrowth
