// Acceptance gate: one timed pass/fail line per criterion, nonzero exit on
// any failure.  Each criterion is self-contained and exact; there are no
// tolerances anywhere.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "nilgrowth/explicit_u.hpp"
#include "nilgrowth/growth_ideal.hpp"
#include "nilgrowth/power_relations.hpp"
#include "nilgrowth/run.hpp"
#include "nilgrowth/schedule.hpp"
#include "nilgrowth/tower.hpp"
#include "nilgrowth/verify.hpp"

using namespace nilgrowth;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

Word W(const char* s) { return Word::parse(s); }

Tower preset_tower(char c, uint32_t p = 2) {
  return Tower::build(toy_tower_params(c, p));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot read " + p.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// Criterion 1: the tower invariants hold on at least three toy parameter
// sets, with (f, g) = (2, 1) rejected and repaired by truncating the
// relation space, and (f, g) = (4, 2) carrying the full degree-16 power
// relation space of {x}.  Dense oracles at k <= 3, structural checks at
// k <= 6.
Outcome criterion1() {
  bool rejected = false;
  try {
    build_schedule(AlphaSpec::log2log2(), 1, ScheduleGrade::Toy,
                   ToyOverride{{2}, {1}, {{W("x")}}});
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  if (!rejected) {
    return {false, "the (2,1) parameters with the full relation space were "
                   "not rejected"};
  }

  // The repair: keep (2, 1) but truncate the relation space to span{x^4},
  // which respects the 2^{2^1} - 2 cap.  That is exactly preset 'b'.
  for (char c : {'a', 'b', 'c', 'd'}) {
    Tower tw = preset_tower(c);
    VerifyReport dense = verify_conditions(tw, std::min(3, tw.max_level()));
    if (!dense.pass()) {
      return {false, std::string("dense conditions fail on preset ") + c};
    }
    VerifyReport structural =
        verify_conditions(tw, std::min(6, tw.max_level()));
    if (!structural.pass()) {
      return {false, std::string("structural conditions fail on preset ") + c};
    }
  }

  // Preset 'a' wires the full degree-16 power-relation space of {x}; its
  // three rows must die under pi_4.
  Tower a = preset_tower('a');
  EchelonSubspace y16 = power_relation_space({W("x")}, 16, a.field());
  if (y16.dim() != 3) return {false, "unexpected degree-16 relation space"};
  for (const FreeVector& r : y16.rows()) {
    if (!coord_is_zero(a.project(4, r))) {
      return {false, "a wired relation row survives pi_4"};
    }
  }
  return {true, "4 parameter sets; (2,1) rejected then repaired as span{x^4}"};
}

// Criterion 2: pi_k(w) = 0 exactly on the dense kernel U(2^k) for every
// word of length 2^k, k <= 3, on two towers over GF(2) and GF(3).
Outcome criterion2() {
  size_t towers = 0, words = 0;
  for (char c : {'a', 'b'}) {
    for (uint32_t p : {2u, 3u}) {
      Tower tw = preset_tower(c, p);
      for (int k = 0; k <= 3; ++k) {
        if (!projection_matches_kernel(tw, k)) {
          return {false, std::string("mismatch on preset ") + c + " over GF(" +
                             std::to_string(p) + ") at k = " +
                             std::to_string(k)};
        }
        words += size_t(1) << (size_t(1) << k);
      }
      ++towers;
    }
  }
  return {true, std::to_string(towers) + " towers, " + std::to_string(words) +
                    " words, zero mismatches"};
}

// Criterion 3: for every 1 <= n <= 12 the descending chain completes L(n)
// and the ascending chain completes R(n) to all of A(n), with the chosen
// completions drawn from the prescribed level-basis products.
Outcome criterion3() {
  for (char c : {'a', 'b'}) {
    Tower tw = preset_tower(c);
    for (int64_t n = 1; n <= 12; ++n) {
      BoundarySpaces b = boundary_spaces(tw, n);
      const size_t full = size_t(1) << n;
      if (!b.left.complete || !b.right.complete ||
          b.left.kernel.dim() + b.left.complement.size() != full ||
          b.right.kernel.dim() + b.right.complement.size() != full) {
        return {false, std::string("no completion on preset ") + c +
                           " at n = " + std::to_string(n)};
      }
      std::vector<Word> desc = chain_words(tw, n, false);
      std::vector<Word> asc = chain_words(tw, n, true);
      std::set<Word> dset(desc.begin(), desc.end());
      std::set<Word> aset(asc.begin(), asc.end());
      for (const Word& w : b.left.complement) {
        if (!dset.count(w)) {
          return {false, "left completion word outside the chain products"};
        }
      }
      for (const Word& w : b.right.complement) {
        if (!aset.count(w)) {
          return {false, "right completion word outside the chain products"};
        }
      }
    }
  }
  return {true, "L(n) and R(n) completed by chain words, n <= 12, 2 towers"};
}

// Criterion 4: the power-absorption sweep a y^{2n} passes exhaustively over
// GF(2) for ({x}, 2), ({x,y}, 4), ({x,xy}, 4), plus 20 sampled sweeps over
// GF(3); the relation-space dimension bound is asserted on every run.
Outcome criterion4() {
  struct Case {
    std::vector<Word> gens;
    int64_t n;
    uint32_t p;
    uint64_t samples;
  };
  const std::vector<Case> cases = {
      {{W("x")}, 2, 2, 0},
      {{W("x"), W("y")}, 4, 2, 0},
      {{W("x"), W("xy")}, 4, 2, 0},
      {{W("x")}, 2, 3, 20},
  };
  uint64_t checks = 0;
  for (const Case& c : cases) {
    PowerContainmentReport r =
        verify_power_containment(c.gens, c.n, FieldSpec(c.p), c.samples, 1);
    if (!r.failures.empty()) {
      return {false, "absorption failure at n = " + std::to_string(c.n) +
                         " over GF(" + std::to_string(c.p) + ")"};
    }
    if (r.dim_y > r.dim_bound) {
      return {false, "relation space exceeds the dimension bound"};
    }
    if (!r.pass()) return {false, "containment report does not pass"};
    checks += r.checks_run;
  }
  return {true, std::to_string(checks) +
                    " membership checks, zero failures, bounds held"};
}

// Criterion 5: dense ideal components I(n), n <= 7, on two towers:
// two-sided at the seams, never swallowing a whole level basis, quotient
// dimensions inside the chain-product bound, and the projected membership
// test agrees with dense membership on every word.
Outcome criterion5() {
  for (char c : {'a', 'b'}) {
    Tower tw = preset_tower(c);
    const FieldSpec& f = tw.field();
    std::vector<EchelonSubspace> comp;  // comp[n-1] = I(n)
    for (int64_t n = 1; n <= 7; ++n) comp.push_back(ideal_component(tw, n));

    for (int64_t n = 1; n <= 6; ++n) {
      for (const FreeVector& row : comp[size_t(n - 1)].rows()) {
        for (const char* gen : {"x", "y"}) {
          const FreeVector g = FreeVector::unit(W(gen));
          if (!comp[size_t(n)].contains(row.mul(g, f)) ||
              !comp[size_t(n)].contains(g.mul(row, f))) {
            return {false, std::string("seam two-sidedness fails on ") + c +
                               " at n = " + std::to_string(n)};
          }
        }
      }
    }

    for (int k = 0; (int64_t(1) << k) <= 7; ++k) {
      const int64_t n = int64_t(1) << k;
      bool escapes = false;
      for (const Word& w : tw.level(k).v_words) {
        if (!comp[size_t(n - 1)].contains(FreeVector::unit(w))) {
          escapes = true;
          break;
        }
      }
      if (!escapes) {
        return {false, std::string("V(") + std::to_string(n) +
                           ") is swallowed by the ideal on preset " + c};
      }
    }

    std::vector<HilbertRow> rows = hilbert_table(tw, 7, AlphaSpec::log2log2());
    for (const HilbertRow& r : rows) {
      if (!r.within) {
        return {false, "quotient dimension exceeds the chain-product bound"};
      }
    }

    for (int64_t n = 1; n <= 7; ++n) {
      for (const Word& w : enumerate_words(int(n))) {
        const FreeVector v = FreeVector::unit(w);
        if (ideal_contains(tw, v).contained !=
            comp[size_t(n - 1)].contains(v)) {
          return {false, "projected and dense membership disagree on " +
                             w.str()};
        }
      }
    }
  }
  return {true, "I(n) two-sided, proper, bounded, and projection-consistent "
                "on all 254 words per tower"};
}

// Criterion 6: the nil demonstration.  Scanning (f, g) upward from (2, 1),
// the first parameters the schedule builder accepts for {x} are (4, 2);
// in that tower x^{2 * 2^{f(1)}} = x^32 carries a full ideal certificate
// while x itself does not.
Outcome criterion6() {
  int64_t bf = -1, bg = -1;
  std::vector<std::string> rejected;
  for (int64_t f = 2; f <= 6 && bf < 0; ++f) {
    for (int64_t g = 1; g < f && bf < 0; ++g) {
      try {
        build_schedule(AlphaSpec::log2log2(), 1, ScheduleGrade::Toy,
                       ToyOverride{{f}, {g}, {{W("x")}}});
        bf = f;
        bg = g;
      } catch (const std::invalid_argument&) {
        rejected.push_back("(" + std::to_string(f) + "," + std::to_string(g) +
                           ")");
      }
    }
  }
  if (bf != 4 || bg != 2) {
    return {false, "expected the scan to accept (4,2) first"};
  }
  if (rejected.empty() || rejected.front() != "(2,1)") {
    return {false, "expected (2,1) to be the first rejected pair"};
  }

  TowerParams tp;
  tp.f = {bf};
  tp.g = {bg};
  RelationSlot slot;
  slot.recipe_words = {W("x")};
  tp.relations = {slot};
  tp.max_level = 6;
  Tower tw = Tower::build(tp);

  NilCertificate good = nil_check(tw, FreeVector::unit(W("x")), 32);
  if (!good.nilpotent_witness || good.degree != 32) {
    return {false, "x^32 is not certified inside the ideal"};
  }
  if (std::any_of(good.ideal.checks.begin(), good.ideal.checks.end(),
                  [](const IdealSliceCheck& s) { return s.span_dim != 0; })) {
    return {false, "a slice of the x^32 certificate has nonzero image"};
  }
  NilCertificate bad = nil_check(tw, FreeVector::unit(W("x")), 1);
  if (bad.nilpotent_witness) {
    return {false, "x itself must not be annihilated"};
  }
  return {true, "scan rejected " + std::to_string(rejected.size()) +
                    " pairs, accepted (4,2); x^32 = 0 certified, x /= 0"};
}

// Criterion 7: the chain-dimension estimate holds at every built level of
// every preset, in exact product arithmetic.
Outcome criterion7() {
  int64_t levels = 0;
  for (char c : {'a', 'b', 'c', 'd'}) {
    Tower tw = preset_tower(c);
    GrowthReport r = growth_check(tw, tw.max_level());
    if (!r.pass()) {
      return {false, std::string("growth bound fails on preset ") + c};
    }
    levels += int64_t(r.rows.size());
  }
  return {true, std::to_string(levels) + " levels within the exact bound"};
}

// Criterion 8: the relation-degree formula reproduces the derived toy
// values; the theorem-grade minimal f(1) for {x} exceeds 2^32; and the
// chain verifier certifies every link at 10 sampled degrees while
// reporting the alpha(n) >= 85 absorption threshold.
Outcome criterion8() {
  if (g_formula(3, {W("x")}) != 3 || g_formula(6, {W("x")}) != 4 ||
      g_formula(6, {W("x"), W("y")}) != 4) {
    return {false, "a derived relation degree is off"};
  }
  if (inner_bitlen(3, {W("x")}) != 7 || inner_bitlen(6, {W("x")}) != 10 ||
      inner_bitlen(6, {W("x"), W("y")}) != 16) {
    return {false, "a derived inner bit length is off"};
  }

  AlphaSpec alpha = AlphaSpec::log2log2();
  SparseSchedule s = build_schedule(alpha, 2, ScheduleGrade::Theorem);
  if (s.entries.size() != 2) return {false, "expected two schedule entries"};
  if (!(s.entries[0].f > (mpz_class(1) << 32))) {
    return {false, "minimal f(1) does not exceed 2^32"};
  }
  if (s.entries[0].f != (mpz_class(1) << 32) + 1 || s.entries[0].g != 33) {
    return {false, "minimal (f(1), g(1)) drifted from the frozen values"};
  }

  ScheduleChainReport r = verify_schedule(s, alpha, 10, 20260823);
  if (r.samples.size() != 10) return {false, "expected 10 sampled degrees"};
  size_t absorbed = 0;
  for (const ChainSample& smp : r.samples) {
    for (const ChainLink& l : smp.links) {
      if (!l.pass) {
        return {false, "chain link " + l.name + " fails: " + l.detail};
      }
    }
    if (smp.alpha_at_least_85) ++absorbed;
  }
  if (!r.core_pass()) return {false, "chain verification does not pass"};
  return {true, "3 derived values, f(1) = 2^32 + 1 minimal, 10/10 links "
                "certified, alpha >= 85 at " +
                    std::to_string(absorbed) + "/10 samples"};
}

// Criterion 9: two full runs with the same configuration and seed produce
// byte-identical artifacts.
Outcome criterion9() {
  auto config = [](const fs::path& out) {
    nlohmann::ordered_json c;
    c["suites"] = nlohmann::ordered_json::array(
        {"verify", "projection", "boundary", "hilbert", "ideal", "growth",
         "power", "nil", "schedule", "chain"});
    c["tower"] = nlohmann::ordered_json{{"preset", "b"}};
    c["seed"] = 987654321;
    c["power"] = nlohmann::ordered_json{
        {"gens", nlohmann::ordered_json::array({"x"})},
        {"n", 2},
        {"samples", 8}};
    c["nil"] = nlohmann::ordered_json{{"element", "x"}, {"exponent", 8}};
    c["schedule"] = nlohmann::ordered_json{
        {"grade", "toy"},
        {"f", nlohmann::ordered_json::array({4})},
        {"g", nlohmann::ordered_json::array({2})},
        {"sets", nlohmann::ordered_json::array(
                     {nlohmann::ordered_json::array({"x"})})},
        {"samples", 3}};
    c["out_dir"] = out.string();
    return c;
  };
  fs::path d1 = fs::temp_directory_path() / "nilgrowth-acceptance-run-1";
  fs::path d2 = fs::temp_directory_path() / "nilgrowth-acceptance-run-2";
  fs::remove_all(d1);
  fs::remove_all(d2);
  int rc1 = run_config(config(d1));
  int rc2 = run_config(config(d2));
  if (rc1 != 0 || rc2 != 0) return {false, "a seeded run did not pass"};

  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(d1)) {
    names.insert(e.path().filename().string());
  }
  size_t other = 0;
  for (const auto& e : fs::directory_iterator(d2)) {
    (void)e;
    ++other;
  }
  if (names.size() != 10 || other != names.size()) {
    return {false, "artifact sets differ"};
  }
  for (const std::string& name : names) {
    if (slurp(d1 / name) != slurp(d2 / name)) {
      return {false, name + " differs between the two runs"};
    }
  }
  return {true, std::to_string(names.size()) +
                    " artifacts byte-identical across two runs"};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    double limit_s;  // 0 = no limit stated
    Outcome (*fn)();
  };
  const std::vector<Entry> entries = {
      {1, 10.0, criterion1},  {2, 10.0, criterion2}, {3, 60.0, criterion3},
      {4, 60.0, criterion4},  {5, 300.0, criterion5}, {6, 300.0, criterion6},
      {7, 1.0, criterion7},   {8, 10.0, criterion8}, {9, 0.0, criterion9},
  };
  bool all = true;
  for (const Entry& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool ok = out.ok;
    std::string note = out.detail;
    if (e.limit_s > 0 && dt >= e.limit_s) {
      ok = false;
      note += note.empty() ? "" : "; ";
      note += "over the " + std::to_string(int(e.limit_s)) + "s limit";
    }
    std::printf("criterion %d: %s  (%.1fs) %s\n", e.id, ok ? "PASS" : "FAIL",
                dt, note.c_str());
    all = all && ok;
  }
  return all ? 0 : 1;
}
