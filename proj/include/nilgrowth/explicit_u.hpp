#pragma once

#include "nilgrowth/echelon.hpp"
#include "nilgrowth/tower.hpp"

namespace nilgrowth {

// Dense materialization of the kernel U(2^k) = ker pi_k as a subspace of
// A(2^k), built by the level-case recursion:
//   root     U(1)      = 0
//   case I   U(2^{k})  = A U + U A
//   case II  U(2^{k})  = A U + U A + w2 V
//   case III U(2^{k})  = U A + V U + Y
// with all factors taken at degree 2^{k-1} and Y the stored kernel mapped to
// word products.  Independent of the project() recursion, so it serves as
// the brute-force oracle for membership in U.
//
// Mandatory range k <= 3; k = 4 is admitted only with allow_degree16 (the
// 2^16-dimensional ambient space costs ~0.5 GB and minutes of elimination).
EchelonSubspace explicit_u(const Tower& tw, int k, bool allow_degree16 = false);

// Dense span of V(2^k) (the unit vectors of the level's word basis).
EchelonSubspace explicit_v(const Tower& tw, int k);

}  // namespace nilgrowth
