#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "nilgrowth/growth_ideal.hpp"
#include "toy.hpp"

using namespace nilgrowth;

namespace {

Word W(const char* s) { return Word::parse(s); }

bool complement_inside_chain(const Tower& tw, int64_t n,
                             const std::vector<Word>& complement,
                             bool ascending) {
  std::vector<Word> chain = chain_words(tw, n, ascending);
  std::set<Word> allowed(chain.begin(), chain.end());
  return std::all_of(complement.begin(), complement.end(),
                     [&](const Word& w) { return allowed.count(w) > 0; });
}

}  // namespace

TEST_CASE("chain words are level-basis products along the binary expansion") {
  Tower tw = toy_tower('b');
  // 5 = 1 + 4: ascending order concatenates V(2) words then V(4) words.
  std::vector<Word> asc = chain_words(tw, 5, true);
  std::vector<Word> expect_asc;
  for (const Word& lo : tw.level(0).v_words) {
    for (const Word& hi : tw.level(2).v_words) {
      expect_asc.push_back(lo.concat(hi));
    }
  }
  std::sort(expect_asc.begin(), expect_asc.end());
  CHECK(asc == expect_asc);

  std::vector<Word> desc = chain_words(tw, 5, false);
  std::vector<Word> expect_desc;
  for (const Word& hi : tw.level(2).v_words) {
    for (const Word& lo : tw.level(0).v_words) {
      expect_desc.push_back(hi.concat(lo));
    }
  }
  std::sort(expect_desc.begin(), expect_desc.end());
  CHECK(desc == expect_desc);

  // Power of two: the chain is the level basis itself.
  CHECK(chain_words(tw, 4, true) == tw.level(2).v_words);
}

TEST_CASE("boundary kernels of the doubling tower at degree 1") {
  Tower tw = toy_tower('d');
  BoundarySpaces b = boundary_spaces(tw, 1);
  // V(2) = {xx, xy}: left multiplication by y lands in the kernel of pi_1.
  REQUIRE(b.left.kernel.dim() == 1);
  CHECK(b.left.kernel.pivots().front() == W("y"));
  CHECK(b.left.complement == std::vector<Word>{W("x")});
  CHECK(b.left.complete);
  CHECK(b.right.kernel.dim() == 0);
  CHECK(b.right.complement == std::vector<Word>{W("x"), W("y")});
  CHECK(b.right.complete);
}

TEST_CASE("boundary completion holds at every degree up to 12") {
  struct Row {
    int64_t n;
    size_t ldim, lcomp, rdim, rcomp;
  };
  const std::vector<Row> expect_a = {
      {1, 1, 1, 0, 2},    {2, 2, 2, 2, 2},     {3, 6, 2, 4, 4},
      {4, 12, 4, 12, 4},  {5, 28, 4, 24, 8},   {6, 56, 8, 56, 8},
      {7, 120, 8, 112, 16}, {8, 255, 1, 254, 2}, {9, 511, 1, 510, 2},
      {10, 1023, 1, 1022, 2}, {11, 2047, 1, 2046, 2}, {12, 4095, 1, 4094, 2},
  };
  const std::vector<Row> expect_b = {
      {1, 0, 2, 0, 2},    {2, 3, 1, 2, 2},     {3, 6, 2, 6, 2},
      {4, 15, 1, 14, 2},  {5, 31, 1, 30, 2},   {6, 63, 1, 62, 2},
      {7, 126, 2, 126, 2}, {8, 255, 1, 254, 2}, {9, 511, 1, 510, 2},
      {10, 1023, 1, 1022, 2}, {11, 2047, 1, 2046, 2}, {12, 4095, 1, 4094, 2},
  };
  for (auto [preset, table] :
       {std::pair<char, const std::vector<Row>*>{'a', &expect_a},
        std::pair<char, const std::vector<Row>*>{'b', &expect_b}}) {
    Tower tw = toy_tower(preset);
    for (const Row& e : *table) {
      CAPTURE(preset);
      CAPTURE(e.n);
      BoundarySpaces b = boundary_spaces(tw, e.n);
      CHECK(b.left.kernel.dim() == e.ldim);
      CHECK(b.left.complement.size() == e.lcomp);
      CHECK(b.left.complete);
      CHECK(b.right.kernel.dim() == e.rdim);
      CHECK(b.right.complement.size() == e.rcomp);
      CHECK(b.right.complete);
      // Completion = the kernel plus the chosen words exhausts A(n).
      CHECK(e.ldim + e.lcomp == (size_t(1) << e.n));
      CHECK(e.rdim + e.rcomp == (size_t(1) << e.n));
      // The chosen completions stay inside the prescribed chain products.
      CHECK(complement_inside_chain(tw, e.n, b.left.complement, false));
      CHECK(complement_inside_chain(tw, e.n, b.right.complement, true));
    }
  }
}

TEST_CASE("the fourth power of x escapes the degree-4 ideal component") {
  Tower tw = toy_tower('b');
  const FreeVector x4 = FreeVector::unit(W("xxxx"));

  EchelonSubspace dense = ideal_component(tw, 4);
  CHECK_FALSE(dense.contains(x4));

  IdealCertificate cert = ideal_contains(tw, x4);
  CHECK_FALSE(cert.contained);
  CHECK(cert.degree == 4);
  CHECK(cert.m == 2);
  REQUIRE(cert.checks.size() == 13);  // split positions j = 0 .. 12
  for (const IdealSliceCheck& c : cert.checks) {
    CAPTURE(c.j);
    CHECK((c.span_dim > 0) == (c.j == 7));
  }

  // The j = 7 witness by hand: a x^4 b with a = xxxyxxy, b = yxxxy splits
  // into the two level-3 basis words, so its tensor image cannot vanish.
  Word full = W("xxxyxxy").concat(W("xxxx")).concat(W("yxxxy"));
  CHECK(full.subword(0, 8) == W("xxxyxxyx"));
  CHECK(full.subword(8, 8) == W("xxxyxxxy"));
  CHECK_FALSE(coord_is_zero(tw.project(3, full.subword(0, 8))));
  CHECK_FALSE(coord_is_zero(tw.project(3, full.subword(8, 8))));
}

TEST_CASE("the eighth power of x lies in the ideal") {
  Tower tw = toy_tower('b');
  IdealCertificate cert =
      ideal_contains(tw, FreeVector::unit(Word::repeated(0, 8)));
  CHECK(cert.contained);
  CHECK(cert.degree == 8);
  CHECK(cert.m == 3);
  REQUIRE(cert.checks.size() == 25);  // split positions j = 0 .. 24
  for (const IdealSliceCheck& c : cert.checks) {
    CHECK(c.span_dim == 0);
  }
}

TEST_CASE("dense ideal components match the brute-force oracle") {
  for (char preset : {'a', 'b', 'd'}) {
    for (uint32_t p : {2u, 3u}) {
      Tower tw = toy_tower(preset, p);
      for (int64_t n = 1; n <= 3; ++n) {
        CAPTURE(preset);
        CAPTURE(p);
        CAPTURE(n);
        EchelonSubspace dense = ideal_component(tw, n);
        EchelonSubspace oracle = ideal_component_oracle(tw, n);
        CHECK(dense.same_space(oracle));
      }
    }
  }
}

TEST_CASE("projected membership agrees with the dense component everywhere") {
  Tower tw = toy_tower('b');
  for (int64_t n = 1; n <= 7; ++n) {
    CAPTURE(n);
    EchelonSubspace comp = ideal_component(tw, n);
    for (const Word& w : enumerate_words(int(n))) {
      CAPTURE(w.str());
      const FreeVector v = FreeVector::unit(w);
      CHECK(ideal_contains(tw, v).contained == comp.contains(v));
    }
  }
}

TEST_CASE("ideal components embed in both boundary kernels") {
  // A(j) v A(..) dying under pi (x) pi forces pi(v b) = 0 and pi(b v) = 0.
  Tower tw = toy_tower('b');
  for (int64_t n = 1; n <= 7; ++n) {
    CAPTURE(n);
    BoundarySpaces b = boundary_spaces(tw, n);
    for (const FreeVector& row : ideal_component(tw, n).rows()) {
      CHECK(b.left.kernel.contains(row));
      CHECK(b.right.kernel.contains(row));
    }
  }
}

TEST_CASE("the ideal is two-sided across alignment seams") {
  Tower tw = toy_tower('b');
  const FieldSpec& f = tw.field();
  for (int64_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    EchelonSubspace next = ideal_component(tw, n + 1);
    for (const FreeVector& row : ideal_component(tw, n).rows()) {
      for (const char* g : {"x", "y"}) {
        const FreeVector gen = FreeVector::unit(W(g));
        CHECK(next.contains(row.mul(gen, f)));
        CHECK(next.contains(gen.mul(row, f)));
      }
    }
  }
}

TEST_CASE("quotient dimensions are positive and at most double per degree") {
  for (char preset : {'a', 'b'}) {
    Tower tw = toy_tower(preset);
    uint64_t prev = 1;  // dim at degree 0
    for (int64_t n = 1; n <= 7; ++n) {
      CAPTURE(preset);
      CAPTURE(n);
      uint64_t q = quotient_dim(tw, n);
      CHECK(q >= 1);
      CHECK(q <= 2 * prev);  // the quotient is generated in degree one
      prev = q;
    }
  }
}

TEST_CASE("hilbert rows of the one-relation tower are frozen") {
  Tower tw = toy_tower('b');
  std::vector<HilbertRow> rows = hilbert_table(tw, 6, AlphaSpec::log2log2());
  REQUIRE(rows.size() == 7);
  const std::vector<uint64_t> exact = {1, 2, 3, 4, 6, 8, 10};
  const std::vector<long> upper = {1, 4, 7, 10, 13, 15, 17};
  const std::vector<long> npow = {1, 1, 1, 1, 4, 5, 6};
  for (size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].n == int64_t(i));
    CHECK(rows[i].exact_dim == exact[i]);
    CHECK(rows[i].upper_bound == upper[i]);
    CHECK(rows[i].n_pow_alpha == npow[i]);
    CHECK(rows[i].within);
  }

  const std::string csv = hilbert_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "n,exact_dim,upper_bound,n_pow_alpha,within_bound");
  const size_t first = csv.find('\n') + 1;
  CHECK(csv.substr(first, csv.find('\n', first) - first) == "0,1,1,1,1");
}

TEST_CASE("growth bound rows carry the hand-computed values") {
  // Preset a: levels 1..7, chain 4,16,256,512,...,4096 against 2^{2n+8}.
  Tower a = toy_tower('a');
  GrowthReport ra = growth_check(a, a.max_level());
  REQUIRE(ra.rows.size() == 7);
  const std::vector<long> chain_a = {4, 16, 256, 512, 1024, 2048, 4096};
  for (size_t i = 0; i < ra.rows.size(); ++i) {
    CAPTURE(i);
    CHECK(ra.rows[i].level == int64_t(i + 1));
    CHECK(ra.rows[i].chain_dim == chain_a[i]);
    mpz_class expect_bound;
    mpz_ui_pow_ui(expect_bound.get_mpz_t(), 2, 2 * (i + 1) + 8);
    CHECK(ra.rows[i].bound == expect_bound);
    CHECK(ra.rows[i].within);
  }
  CHECK(ra.pass());

  // Preset b: chain 8,16,32,64 against 2^{2n+4}.
  Tower b = toy_tower('b');
  GrowthReport rb = growth_check(b, b.max_level());
  REQUIRE(rb.rows.size() == 4);
  const std::vector<long> chain_b = {8, 16, 32, 64};
  for (size_t i = 0; i < rb.rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rb.rows[i].chain_dim == chain_b[i]);
    mpz_class expect_bound;
    mpz_ui_pow_ui(expect_bound.get_mpz_t(), 2, 2 * (i + 1) + 4);
    CHECK(rb.rows[i].bound == expect_bound);
    CHECK(rb.rows[i].within);
  }
  CHECK(rb.pass());

  CHECK_THROWS_AS(growth_check(a, 0), std::invalid_argument);
  CHECK_THROWS_AS(growth_check(a, 99), std::invalid_argument);
}

TEST_CASE("nil certificates record the failing and passing trails") {
  Tower tw = toy_tower('b');
  const FreeVector x = FreeVector::unit(W("x"));

  NilCertificate bad = nil_check(tw, x, 1);
  CHECK_FALSE(bad.nilpotent_witness);
  CHECK(bad.degree == 1);
  REQUIRE(!bad.ideal.checks.empty());
  CHECK(std::any_of(bad.ideal.checks.begin(), bad.ideal.checks.end(),
                    [](const IdealSliceCheck& c) { return c.span_dim > 0; }));

  NilCertificate good = nil_check(tw, x, 8);
  CHECK(good.nilpotent_witness);
  CHECK(good.degree == 8);
  CHECK(good.exponent == 8);

  CHECK_THROWS_AS(nil_check(tw, x, 0), std::invalid_argument);
}
