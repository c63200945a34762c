#include "nilgrowth/schedule.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "nilgrowth/common.hpp"
#include "nilgrowth/field.hpp"
#include "nilgrowth/power_relations.hpp"

namespace nilgrowth {

namespace {

// Upper bound (in bits) on inner values that are materialized exactly;
// larger ones go through the non-overlapping binomial expansion.
constexpr unsigned long kMaterializeBits = 4'000'000;

int64_t set_degree(const std::vector<Word>& set) {
  if (set.empty()) throw std::invalid_argument("word set must be nonempty");
  int64_t deg = 0;
  for (const Word& w : set) {
    if (w.length() == 0) {
      throw std::invalid_argument("word set must not contain the empty word");
    }
    deg = std::max<int64_t>(deg, w.length());
  }
  return deg;
}

// M = 2 deg^2 4^deg, the degree-driven factor of the inner value.
mpz_class inner_factor(int64_t deg) {
  mpz_class m = 2 * mpz_class(deg) * mpz_class(deg);
  m <<= 2 * static_cast<unsigned long>(deg);
  return m;
}

std::string set_str(const std::vector<Word>& set) {
  std::string s = "{";
  for (size_t i = 0; i < set.size(); ++i) {
    if (i) s += ",";
    s += set[i].str();
  }
  return s + "}";
}

// t <= 2^m, without materializing 2^m.
bool le_pow2(const mpz_class& t, const mpz_class& m) {
  if (t <= 0) return true;
  if (m < 0) return false;
  mpz_class b = bitlen(t);
  if (b <= m) return true;
  return b == m + 1 && mpz_popcount(t.get_mpz_t()) == 1;
}

mpz_class pow2(unsigned long e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

}  // namespace

std::string Rational::str() const {
  if (den == 1) return num.get_str();
  return num.get_str() + "/" + den.get_str();
}

mpz_class bitlen(const mpz_class& m) {
  if (m < 1) throw std::invalid_argument("bitlen requires a positive value");
  return mpz_class(static_cast<unsigned long>(
      mpz_sizeinbase(m.get_mpz_t(), 2)));
}

mpz_class ceil_log2(const mpz_class& m) {
  if (m < 1) throw std::invalid_argument("ceil_log2 requires a positive value");
  if (m == 1) return 0;
  mpz_class b = bitlen(m);
  return mpz_popcount(m.get_mpz_t()) == 1 ? b - 1 : b;
}

AlphaSpec AlphaSpec::log2log2() {
  AlphaSpec a;
  a.kind_ = Kind::Log2Log2;
  a.name_ = "log2log2";
  return a;
}

AlphaSpec AlphaSpec::log2() {
  AlphaSpec a;
  a.kind_ = Kind::Log2;
  a.name_ = "log2";
  return a;
}

AlphaSpec AlphaSpec::sqrt_log() {
  AlphaSpec a;
  a.kind_ = Kind::SqrtLog;
  a.name_ = "sqrt_log";
  return a;
}

AlphaSpec AlphaSpec::table(
    std::vector<std::pair<mpz_class, Rational>> steps) {
  if (steps.empty()) throw std::invalid_argument("alpha table must be nonempty");
  for (size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].first < 1 || steps[i].second.den < 1) {
      throw std::invalid_argument("alpha table entries must be positive");
    }
    if (i > 0) {
      if (steps[i].first <= steps[i - 1].first) {
        throw std::invalid_argument("alpha table thresholds must increase");
      }
      const Rational& a = steps[i - 1].second;
      const Rational& b = steps[i].second;
      if (!(b.num * a.den > a.num * b.den)) {
        throw std::invalid_argument(
            "alpha table values must strictly increase (a constant exponent "
            "is not an admissible growth target)");
      }
    }
  }
  AlphaSpec a;
  a.kind_ = Kind::Table;
  a.name_ = "table";
  a.steps_ = std::move(steps);
  return a;
}

AlphaSpec AlphaSpec::by_name(const std::string& name) {
  if (name == "log2log2") return log2log2();
  if (name == "log2") return log2();
  if (name == "sqrt_log") return sqrt_log();
  throw std::invalid_argument("unknown alpha spec: " + name);
}

Rational AlphaSpec::lower_bound(const mpz_class& n) const {
  if (n < 1) throw std::invalid_argument("alpha lower bound requires n >= 1");
  switch (kind_) {
    case Kind::Log2Log2: {
      mpz_class l = bitlen(n) - 1;  // floor(log2 n)
      if (l < 1) return {0, 1};
      return {bitlen(l) - 1, 1};
    }
    case Kind::Log2:
      return {bitlen(n) - 1, 1};
    case Kind::SqrtLog: {
      mpz_class l = bitlen(n) - 1;
      if (l < 1) return {0, 1};
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), l.get_mpz_t());
      return {s, 1};
    }
    case Kind::Table: {
      Rational best{0, 1};
      for (const auto& [thr, val] : steps_) {
        if (thr <= n) best = val;
      }
      return best;
    }
  }
  return {0, 1};
}

Rational AlphaSpec::lower_bound_at_pow2(const mpz_class& m) const {
  if (m < 0) throw std::invalid_argument("alpha lower bound requires m >= 0");
  switch (kind_) {
    case Kind::Log2Log2: {
      if (m < 1) return {0, 1};
      return {bitlen(m) - 1, 1};
    }
    case Kind::Log2:
      return {m, 1};
    case Kind::SqrtLog: {
      if (m < 1) return {0, 1};
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
      return {s, 1};
    }
    case Kind::Table: {
      Rational best{0, 1};
      for (const auto& [thr, val] : steps_) {
        if (le_pow2(thr, m)) best = val;
      }
      return best;
    }
  }
  return {0, 1};
}

std::vector<Word> WordSetEnumerator::at(uint64_t index) {
  if (index < 1) throw std::invalid_argument("word-set indices are 1-based");
  while (cache_.size() < index) extend();
  return cache_[index - 1];
}

void WordSetEnumerator::extend() {
  if (next_total_ > 22) {
    throw capacity_error("word-set enumeration past total length 22",
                         static_cast<int>(next_total_));
  }
  // All sets of total length next_total_, as sorted element lists, produced
  // in elementwise word order: depth-first, extending with the next word in
  // the fixed order at every position.
  std::vector<Word> current;
  auto gen = [&](auto&& self, const Word& prev, int64_t remaining) -> void {
    for (int len = 1; len <= remaining; ++len) {
      for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
        Word w = Word::from_index(len, v);
        if (!(w > prev)) continue;
        current.push_back(w);
        if (len == remaining) {
          cache_.push_back(current);
        } else {
          self(self, w, remaining - len);
        }
        current.pop_back();
      }
    }
  };
  gen(gen, Word(), next_total_);
  ++next_total_;
}

mpz_class inner_bitlen(const mpz_class& f_value,
                       const std::vector<Word>& set) {
  if (f_value < 1) throw std::invalid_argument("inner value requires f >= 1");
  int64_t deg = set_degree(set);
  mpz_class c = set.size();
  mpz_class m = inner_factor(deg);
  mpz_class bm = bitlen(m);
  if (f_value * c + bm <= kMaterializeBits) {
    unsigned long f = f_value.get_ui();
    mpz_class n = pow2(f) + 1;
    mpz_pow_ui(n.get_mpz_t(), n.get_mpz_t(), set.size());
    n = n * m + 2;
    return bitlen(n);
  }
  // N = M 2^{fc} + sum_{k<c} binom(c,k) M 2^{fk} + 2.  The tail is below
  // 2^{fc} whenever f clears the per-term bit widths, so the top block alone
  // fixes the bit length.
  if (!(f_value >= bm + c + bitlen(c) + 2)) {
    throw std::logic_error("inner bit length: binomial blocks overlap");
  }
  return f_value * c + bm;
}

mpz_class g_formula(const mpz_class& f_value, const std::vector<Word>& set) {
  // N = (2^f+1)^c M + 2 is 2 mod 4, hence never a power of two, so the
  // smallest g with 2^{2^g} >= N is ceil log2 of the bit length of N.
  return ceil_log2(inner_bitlen(f_value, set));
}

nlohmann::ordered_json SparseSchedule::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "nilgrowth-schedule-v1";
  j["grade"] = grade == ScheduleGrade::Toy ? "toy" : "theorem";
  j["alpha"] = alpha_name;
  j["entries"] = nlohmann::ordered_json::array();
  for (const ScheduleEntry& e : entries) {
    nlohmann::ordered_json je;
    je["index"] = e.index;
    auto set = nlohmann::ordered_json::array();
    for (const Word& w : e.set) set.push_back(w.str());
    je["set"] = std::move(set);
    je["f"] = e.f.get_str();
    je["g"] = e.g.get_str();
    j["entries"].push_back(std::move(je));
  }
  return j;
}

namespace {

SparseSchedule build_toy_schedule(const AlphaSpec& alpha, size_t count,
                                  const std::optional<ToyOverride>& ov) {
  if (!ov) {
    throw std::invalid_argument("toy schedule requires explicit f, g, sets");
  }
  if (ov->f.size() != ov->g.size() || ov->f.size() != ov->sets.size()) {
    throw std::invalid_argument(
        "toy schedule: f, g, sets must have equal length");
  }
  if (count > ov->f.size()) {
    throw std::invalid_argument("toy schedule: fewer levels than requested");
  }
  std::vector<std::string> bad;
  FieldSpec two(2);
  for (size_t i = 0; i < count; ++i) {
    int64_t fi = ov->f[i];
    int64_t gi = ov->g[i];
    std::string at = "level " + std::to_string(i + 1) + ": ";
    if (gi < 1) bad.push_back(at + "g must be at least 1");
    if (i == 0) {
      if (!(fi > gi + 1)) {
        bad.push_back(at + "f(1) = " + std::to_string(fi) +
                      " must exceed g(1) + 1 = " + std::to_string(gi + 1));
      }
    } else {
      if (!(fi > gi + ov->f[i - 1] + 1)) {
        bad.push_back(at + "f = " + std::to_string(fi) +
                      " must exceed g + previous f + 1 = " +
                      std::to_string(gi + ov->f[i - 1] + 1));
      }
      if (!(gi > ov->g[i - 1])) {
        bad.push_back(at + "g = " + std::to_string(gi) +
                      " must exceed the previous g = " +
                      std::to_string(ov->g[i - 1]));
      }
    }
    if (ov->sets[i].empty()) {
      bad.push_back(at + "the word set is empty");
    } else if (fi < 1 || fi > 8) {
      // 2^8 = 256 is the packed word-length limit; past it the degree-2^f
      // relation space cannot be materialized.
      bad.push_back(at + "f must lie in [1, 8] to materialize the "
                         "relation-dimension check");
    } else if (gi >= 1 && gi <= 25) {
      size_t dim =
          power_relation_space(ov->sets[i], int64_t(1) << fi, two).dim();
      mpz_class cap = pow2(1ul << static_cast<unsigned long>(gi)) - 2;
      if (mpz_class(dim) > cap) {
        bad.push_back(at + "relation space of " + set_str(ov->sets[i]) +
                      " at degree 2^" + std::to_string(fi) +
                      " has dimension " + std::to_string(dim) +
                      " above the cap 2^(2^" + std::to_string(gi) +
                      ") - 2 = " + cap.get_str());
      }
    }
  }
  if (!bad.empty()) {
    std::string msg = "toy schedule rejected: ";
    for (size_t i = 0; i < bad.size(); ++i) {
      if (i) msg += "; ";
      msg += bad[i];
    }
    throw std::invalid_argument(msg);
  }
  SparseSchedule out;
  out.grade = ScheduleGrade::Toy;
  out.alpha_name = alpha.name();
  for (size_t i = 0; i < count; ++i) {
    out.entries.push_back({0, ov->sets[i], mpz_class(ov->f[i]),
                           mpz_class(ov->g[i])});
  }
  return out;
}

}  // namespace

SparseSchedule build_schedule(const AlphaSpec& alpha, size_t count,
                              ScheduleGrade grade,
                              const std::optional<ToyOverride>& overrides) {
  if (count < 1) throw std::invalid_argument("schedule: count must be >= 1");
  if (count > 4096) throw std::invalid_argument("schedule: count cap is 4096");
  if (grade == ScheduleGrade::Toy) {
    return build_toy_schedule(alpha, count, overrides);
  }
  if (overrides) {
    throw std::invalid_argument("theorem schedule takes no overrides");
  }
  SparseSchedule out;
  out.grade = ScheduleGrade::Theorem;
  out.alpha_name = alpha.name();
  WordSetEnumerator en;
  mpz_class f_prev = 0;
  mpz_class g_prev = 0;
  for (size_t i = 0; i < count; ++i) {
    std::vector<Word> set = en.at(i + 1);
    int64_t deg = set_degree(set);
    mpz_class c = set.size();
    mpz_class degree_floor;  // (deg 2^{deg+1})^16; f must exceed it
    {
      mpz_class base = mpz_class(deg) << static_cast<unsigned long>(deg + 1);
      mpz_pow_ui(degree_floor.get_mpz_t(), base.get_mpz_t(), 16);
    }
    mpz_class seventeen_c = 17 * c;
    auto all_pass = [&](const mpz_class& f) -> bool {
      if (f < 1) return false;
      if (!(f > degree_floor)) return false;
      if (!alpha.lower_bound_at_pow2(f).greater_than(seventeen_c)) return false;
      mpz_class g = g_formula(f, set);
      if (!(f > g + f_prev + 1)) return false;
      if (!(g > g_prev)) return false;
      return true;
    };
    // A passing candidate: the exact alpha and degree thresholds, then a
    // fixpoint for the separation and g-increase conditions.
    mpz_class cand = degree_floor + 1;
    {
      mpz_class hi = 1;
      int rounds = 0;
      while (!alpha.lower_bound_at_pow2(hi).greater_than(seventeen_c)) {
        hi *= 2;
        if (++rounds > 512) {
          throw std::invalid_argument(
              "alpha spec never exceeds 17 x set size; no admissible f");
        }
      }
      mpz_class lo = 1;
      while (lo < hi) {
        mpz_class mid = (lo + hi) / 2;
        if (alpha.lower_bound_at_pow2(mid).greater_than(seventeen_c)) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      cand = std::max(cand, lo);
    }
    cand = std::max(cand, mpz_class(f_prev + 2));
    mpz_class bm = bitlen(inner_factor(deg));
    for (int rounds = 0;; ++rounds) {
      if (rounds > 4096) {
        throw std::logic_error("schedule search failed to converge");
      }
      mpz_class g = g_formula(cand, set);
      mpz_class req = g + f_prev + 2;
      if (cand < req) {
        cand = req;
        continue;
      }
      if (!(g > g_prev)) {
        // Raise f until bitlen(N) >= 2^{g_prev} + 1; with the binomial
        // blocks separated, bitlen(N) = f c + bitlen(M).
        if (g_prev > 1'000'000) {
          throw std::logic_error("schedule search: g target out of range");
        }
        mpz_class target = pow2(g_prev.get_ui()) + 1 - bm;
        mpz_class ft;
        mpz_cdiv_q(ft.get_mpz_t(), target.get_mpz_t(), c.get_mpz_t());
        if (ft <= cand) {
          cand += 1;
        } else {
          cand = ft;
        }
        continue;
      }
      break;
    }
    if (!all_pass(cand)) {
      throw std::logic_error("schedule search produced a non-admissible f");
    }
    mpz_class lo = 1;
    mpz_class hi = cand;
    while (lo < hi) {
      mpz_class mid = (lo + hi) / 2;
      if (all_pass(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (!all_pass(lo) || (lo > 1 && all_pass(lo - 1))) {
      throw std::logic_error("schedule minimality certificate failed");
    }
    mpz_class g = g_formula(lo, set);
    out.entries.push_back({i + 1, std::move(set), lo, g});
    f_prev = out.entries.back().f;
    g_prev = g;
  }
  return out;
}

bool ScheduleChainReport::core_pass() const {
  for (const ChainSample& s : samples) {
    for (const ChainLink& l : s.links) {
      if (!l.pass) return false;
    }
  }
  return !samples.empty();
}

nlohmann::ordered_json ScheduleChainReport::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "nilgrowth-chain-v1";
  j["alpha"] = alpha_name;
  j["absorption_threshold"] = absorption_threshold;
  j["core_pass"] = core_pass();
  j["samples"] = nlohmann::ordered_json::array();
  for (const ChainSample& s : samples) {
    nlohmann::ordered_json js;
    js["m"] = s.m.get_str();
    js["entry"] = s.entry;
    js["links"] = nlohmann::ordered_json::array();
    for (const ChainLink& l : s.links) {
      js["links"].push_back({{"name", l.name},
                             {"pass", l.pass},
                             {"detail", l.detail}});
    }
    js["alpha_at_least_85"] = s.alpha_at_least_85;
    j["samples"].push_back(std::move(js));
  }
  return j;
}

ScheduleChainReport verify_schedule(const SparseSchedule& sched,
                                    const AlphaSpec& alpha,
                                    size_t num_samples, uint64_t seed) {
  if (sched.entries.empty()) {
    throw std::invalid_argument("verify_schedule: empty schedule");
  }
  if (num_samples < 1) {
    throw std::invalid_argument("verify_schedule: need at least one sample");
  }
  ScheduleChainReport report;
  report.alpha_name = alpha.name();
  std::mt19937_64 rng(seed);
  for (size_t s = 0; s < num_samples; ++s) {
    size_t entry = static_cast<size_t>(rng() % sched.entries.size());
    const ScheduleEntry& e = sched.entries[entry];
    // Sample a degree exponent m in the bracket [f(i), f(i+1)) — past the
    // last level, in [f(i), 2 f(i)).
    mpz_class hi = entry + 1 < sched.entries.size()
                       ? sched.entries[entry + 1].f
                       : mpz_class(2 * e.f);
    mpz_class span = hi - e.f;
    if (span < 1) span = 1;
    uint64_t span_u = span > mpz_class(uint64_t(1) << 62)
                          ? (uint64_t(1) << 62)
                          : span.get_ui();
    mpz_class m = e.f + mpz_class(static_cast<unsigned long>(rng() % span_u));

    ChainSample sample;
    sample.m = m;
    sample.entry = entry;

    int64_t deg = set_degree(e.set);
    mpz_class c = e.set.size();
    mpz_class nbits = inner_bitlen(e.f, e.set);

    {  // 2^{2^{g+2}} <= N^8, certified as 2^{g-1} <= bitlen(N) - 1.
      ChainLink l;
      l.name = "power-step";
      if (e.g < 1 || e.g > 1'000'000) {
        l.pass = false;
        l.detail = "g out of certificate range";
      } else {
        mpz_class lhs = pow2(mpz_class(e.g - 1).get_ui());
        mpz_class rhs = nbits - 1;
        l.pass = lhs <= rhs;
        l.detail = "2^(g-1) = " + lhs.get_str() +
                   " <= bitlen(N) - 1 = " + rhs.get_str();
      }
      sample.links.push_back(std::move(l));
    }
    {  // N^8 <= (n^c deg 2^{deg+1})^8 at n = 2^m, certified on bit lengths.
      ChainLink l;
      l.name = "relation-step";
      mpz_class rhs =
          2 * m * c + 2 * (deg + 1) + 2 * (bitlen(mpz_class(deg)) - 1);
      l.pass = nbits <= rhs;
      l.detail = "bitlen(N) = " + nbits.get_str() +
                 " <= 2mc + 2(deg+1) + 2(bitlen(deg)-1) = " + rhs.get_str();
      sample.links.push_back(std::move(l));
    }
    {  // Degree floor, bracket, and the alpha margin at 2^f.
      ChainLink l;
      l.name = "alpha-step";
      mpz_class degree_floor;
      mpz_class base = mpz_class(deg) << static_cast<unsigned long>(deg + 1);
      mpz_pow_ui(degree_floor.get_mpz_t(), base.get_mpz_t(), 16);
      bool floor_ok = degree_floor < e.f;
      bool bracket_ok = e.f <= m && m >= 1;
      Rational lb = alpha.lower_bound_at_pow2(e.f);
      bool margin_ok = lb.greater_than(17 * c);
      l.pass = floor_ok && bracket_ok && margin_ok;
      l.detail = "(deg 2^(deg+1))^16 = " + degree_floor.get_str() +
                 " < f: " + (floor_ok ? "yes" : "no") +
                 "; f <= m: " + (bracket_ok ? "yes" : "no") +
                 "; alpha(2^f) >= " + lb.str() + " > 17 card = " +
                 mpz_class(17 * c).get_str() + ": " +
                 (margin_ok ? "yes" : "no");
      sample.links.push_back(std::move(l));
    }
    sample.alpha_at_least_85 =
        alpha.lower_bound_at_pow2(m).at_least(report.absorption_threshold);
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace nilgrowth
