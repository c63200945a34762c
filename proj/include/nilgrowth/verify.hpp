#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nilgrowth/tower.hpp"

namespace nilgrowth {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  uint32_t p = 2;
  int kmax = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

// Structural invariants of a built tower, levels 0..kmax:
//   complement          U(2^k) (+) V(2^k) = A(2^k)   (dense, k <= 3)
//   gap-dimension       dim V(2^n) = 2 off the ramps
//   ramp-dimension      dim V doubles exponentially along each ramp
//   word-basis          each V(2^k) has a sorted word basis
//   relation-collapse   pi_{f(i)} kills the attached relation space
//   kernel-ideal        A U(2^k) and U(2^k) A land in U(2^{k+1})
//   basis-products      level words split into products of parent words
//   gap-span            the excluded word times A(2^n) projects to zero
//   aligned-absorption  A(q 2^m) U(2^m) A(..) stays inside the kernel
// Dense checks run through the explicit_u oracle; past the dense range the
// same statements are checked through exact family spans.
VerifyReport verify_conditions(const Tower& tw, int kmax);

// Bridge between the recursive projection and the dense kernel: for every
// word w of length 2^k, the residual of w minus its projected coordinates
// lies in explicit_u(k), i.e. pi_k(w) = 0 iff w in U(2^k).  k <= 3.
bool projection_matches_kernel(const Tower& tw, int k);

}  // namespace nilgrowth
