#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilgrowth/word.hpp"

namespace nilgrowth {

// Exact rational used for growth-exponent lower bounds.  den > 0.
struct Rational {
  mpz_class num;
  mpz_class den = 1;

  // this >= a/b compared exactly.
  bool at_least(const mpz_class& a, const mpz_class& b = 1) const {
    return num * b >= a * den;
  }
  bool greater_than(const mpz_class& a, const mpz_class& b = 1) const {
    return num * b > a * den;
  }
  std::string str() const;
};

// floor(log2 m) + 1 for m >= 1 (number of binary digits).
mpz_class bitlen(const mpz_class& m);
// smallest t >= 0 with 2^t >= m, m >= 1.
mpz_class ceil_log2(const mpz_class& m);

// A prescribed growth exponent n -> alpha(n): one of the built-in shapes or
// a user step table.  Only exact rational lower bounds are ever evaluated.
// alpha must be unbounded-capable: constant step tables are rejected.
class AlphaSpec {
public:
  static AlphaSpec log2log2();  // alpha(n) = log2 log2 n
  static AlphaSpec log2();      // alpha(n) = log2 n
  static AlphaSpec sqrt_log();  // alpha(n) = sqrt(log2 n)
  // Step table of (threshold n_i, value): alpha(n) >= value for n >= n_i.
  // Thresholds and values must be strictly increasing.
  static AlphaSpec table(std::vector<std::pair<mpz_class, Rational>> steps);
  static AlphaSpec by_name(const std::string& name);  // built-ins only

  const std::string& name() const { return name_; }
  // Exact lower bound for alpha(n), n >= 1.
  Rational lower_bound(const mpz_class& n) const;
  // Exact lower bound for alpha(2^m) without materializing 2^m.
  Rational lower_bound_at_pow2(const mpz_class& m) const;

private:
  enum class Kind { Log2Log2, Log2, SqrtLog, Table };
  Kind kind_ = Kind::Log2Log2;
  std::string name_;
  std::vector<std::pair<mpz_class, Rational>> steps_;
};

// Deterministic enumeration of all finite nonempty sets of nonempty words,
// ordered by total length, then elementwise (fixed word order) on the
// sorted element list.  Indices are 1-based.
class WordSetEnumerator {
public:
  std::vector<Word> at(uint64_t index);

private:
  void extend();
  std::vector<std::vector<Word>> cache_;
  int64_t next_total_ = 1;
};

// Exact bit length of the inner value N = (2^f + 1)^card * (2 deg^2 4^deg)
// + 2 attached to a word set; exact for every f (large f goes through the
// non-overlapping binomial expansion instead of materializing N).
mpz_class inner_bitlen(const mpz_class& f_value, const std::vector<Word>& set);

// The relation-degree formula: smallest g with 2^{2^g} >= N.
mpz_class g_formula(const mpz_class& f_value, const std::vector<Word>& set);

enum class ScheduleGrade { Toy, Theorem };

struct ScheduleEntry {
  uint64_t index = 0;  // position in the word-set enumeration (0 for toys)
  std::vector<Word> set;
  mpz_class f;
  mpz_class g;
};

struct SparseSchedule {
  ScheduleGrade grade = ScheduleGrade::Toy;
  std::string alpha_name;
  std::vector<ScheduleEntry> entries;

  nlohmann::ordered_json to_json() const;
};

struct ToyOverride {
  std::vector<int64_t> f;
  std::vector<int64_t> g;
  std::vector<std::vector<Word>> sets;
};

// Builds the first `count` schedule entries.
//   Toy grade: takes the overrides verbatim after validating the separation
//   conditions (f(1) > g(1)+1, f(i+1) > g(i+1)+f(i)+1, g increasing) and
//   the relation-dimension cap dim <= 2^{2^{g(i)}} - 2 against the power
//   relation space of the wired set.
//   Theorem grade: S_i from the word-set enumeration, f(i) minimal with
//     alpha(2^{f(i)}) > 17 card(S_i),
//     f(i) > (deg S_i * 2^{deg S_i + 1})^16,
//     f(i) > g(i) + f(i-1) + 1  and  g(i) > g(i-1),
//   g(i) = g_formula(f(i), S_i); minimality of every f(i) is certified by
//   re-checking all conditions at f(i) - 1.
SparseSchedule build_schedule(const AlphaSpec& alpha, size_t count,
                              ScheduleGrade grade,
                              const std::optional<ToyOverride>& overrides = {});

struct ChainLink {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ChainSample {
  mpz_class m;  // sampled degree exponent, n = 2^m
  size_t entry = 0;
  std::vector<ChainLink> links;
  bool alpha_at_least_85 = false;
};

struct ScheduleChainReport {
  std::string alpha_name;
  unsigned absorption_threshold = 85;  // final step absorbs iff alpha(n) >= 85
  std::vector<ChainSample> samples;

  bool core_pass() const;  // every non-final link at every sample
  nlohmann::ordered_json to_json() const;
};

// Validates the degree-chain estimate link by link at `num_samples` sampled
// degrees n = 2^m, each bracketed by the schedule entry with
// f(i) <= m < f(i+1):
//   power-step      2^{2^{g(i)+2}} <= N_i^8
//   relation-step   n^4 N_i^8 <= n^{4 + 16 card} (deg 2^{deg+1})^{16}
//   alpha-step      (deg 2^{deg+1})^{16} < f(i) <= m and
//                   alpha(2^{f(i)}) > 17 card(S_i)
// and reports, per sample, whether the final absorption alpha(n) >= 85
// holds.  All certificates are exact bit-length arithmetic.
ScheduleChainReport verify_schedule(const SparseSchedule& sched,
                                    const AlphaSpec& alpha,
                                    size_t num_samples, uint64_t seed);

}  // namespace nilgrowth
