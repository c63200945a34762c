#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "nilgrowth/explicit_u.hpp"
#include "nilgrowth/power_relations.hpp"
#include "nilgrowth/tower.hpp"
#include "nilgrowth/verify.hpp"
#include "toy.hpp"

using namespace nilgrowth;

namespace {

std::vector<std::string> word_strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  out.reserve(ws.size());
  for (const Word& w : ws) out.push_back(w.str());
  return out;
}

bool check_failed(const VerifyReport& r, const std::string& name) {
  return std::any_of(r.checks.begin(), r.checks.end(),
                     [&](const CheckResult& c) { return c.name == name && !c.pass; });
}

}  // namespace

TEST_CASE("collapse level set follows the ramp rules") {
  using V = std::vector<int64_t>;
  CHECK(t_set({3, 7}, {1, 2}) == V{1, 2, 4, 5, 6});
  CHECK(t_set({3}, {1}) == V{1, 2});
  // The first ramp alone may reach down to level 0.
  CHECK(t_set({2}, {1}) == V{0, 1});
  CHECK(t_set({}, {}) == V{});

  // Touching ramps: f(1) = 3 is not < f(2) - g(2) - 1 = 3.
  CHECK_THROWS_AS(t_set({3, 6}, {1, 2}), std::invalid_argument);
  // f(1) >= g(1) + 1 fails.
  CHECK_THROWS_AS(t_set({1}, {1}), std::invalid_argument);
  // g must be at least 1.
  CHECK_THROWS_AS(t_set({3}, {0}), std::invalid_argument);
  // Mismatched lengths.
  CHECK_THROWS_AS(t_set({3, 7}, {1}), std::invalid_argument);
}

TEST_CASE("level cases and dimensions match the hand tables") {
  struct Expect {
    char preset;
    std::vector<LevelCase> cases;
    std::vector<size_t> dims;
  };
  const LevelCase R = LevelCase::Root, I = LevelCase::CaseI,
                  II = LevelCase::CaseII, III = LevelCase::CaseIII;
  const std::vector<Expect> table = {
      {'a', {R, II, I, I, III, II, II, II}, {2, 2, 4, 16, 2, 2, 2, 2}},
      {'b', {R, I, III, II, II}, {2, 4, 2, 2, 2}},
      {'c', {R, I, III, II, I, I, III}, {2, 4, 2, 2, 4, 16, 2}},
      {'d', {R, II, II, II, II, II, II}, {2, 2, 2, 2, 2, 2, 2}},
  };
  for (const Expect& e : table) {
    CAPTURE(e.preset);
    Tower tw = toy_tower(e.preset);
    REQUIRE(tw.max_level() + 1 == int(e.cases.size()));
    for (int k = 0; k <= tw.max_level(); ++k) {
      CAPTURE(k);
      CHECK(tw.level(k).lcase == e.cases[size_t(k)]);
      CHECK(tw.dim_v(k) == e.dims[size_t(k)]);
    }
  }
}

TEST_CASE("frozen level bases of the one-relation tower") {
  Tower tw = toy_tower('b');
  CHECK(word_strs(tw.level(0).v_words) == std::vector<std::string>{"x", "y"});
  CHECK(word_strs(tw.level(1).v_words) ==
        std::vector<std::string>{"xx", "xy", "yx", "yy"});
  CHECK(word_strs(tw.level(2).v_words) ==
        std::vector<std::string>{"xxxy", "xxyx"});
  CHECK(word_strs(tw.level(3).v_words) ==
        std::vector<std::string>{"xxxyxxxy", "xxxyxxyx"});
}

TEST_CASE("relation rows vanish under the projection") {
  Tower b = toy_tower('b');
  CHECK(coord_is_zero(b.project(2, Word::parse("xxxx"))));

  // Tower 'a' wires the whole degree-16 power-relation space of {x}.
  Tower a = toy_tower('a');
  EchelonSubspace y =
      power_relation_space({Word::parse("x")}, 16, a.field());
  CHECK(y.dim() == 3);
  for (const FreeVector& r : y.rows()) {
    CHECK(coord_is_zero(a.project(4, r)));
  }
}

TEST_CASE("projection agrees with the dense kernel on every word") {
  for (char preset : {'a', 'b', 'c', 'd'}) {
    for (uint32_t p : {2u, 3u}) {
      Tower tw = toy_tower(preset, p);
      for (int k = 0; k <= std::min(3, tw.max_level()); ++k) {
        CAPTURE(preset);
        CAPTURE(p);
        CAPTURE(k);
        CHECK(projection_matches_kernel(tw, k));
      }
    }
  }
}

TEST_CASE("structural invariants hold on every preset and small field") {
  for (char preset : {'a', 'b', 'c', 'd'}) {
    for (uint32_t p : {2u, 3u, 5u}) {
      CAPTURE(preset);
      CAPTURE(p);
      Tower tw = toy_tower(preset, p);
      VerifyReport r = verify_conditions(tw, tw.max_level());
      for (const CheckResult& c : r.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.pass);
      }
      CHECK(r.pass());
    }
  }
}

TEST_CASE("serialization round-trips exactly") {
  Tower tw = toy_tower('a');
  nlohmann::ordered_json j = tw.to_json();
  Tower back = Tower::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.to_json().dump(2) == j.dump(2));
  for (int k = 0; k <= 3; ++k) {
    for (const Word& w : enumerate_words(1 << k)) {
      CHECK(tw.project(k, w) == back.project(k, w));
    }
  }
  CHECK(back.tset() == tw.tset());
}

TEST_CASE("malformed serialized towers are rejected") {
  const nlohmann::ordered_json good = toy_tower('b').to_json();

  CHECK_THROWS_AS(Tower::from_json(nlohmann::ordered_json::object()),
                  std::invalid_argument);

  nlohmann::ordered_json bad = good;
  bad["format"] = "something-else";
  CHECK_THROWS_AS(Tower::from_json(bad), std::invalid_argument);

  bad = good;
  bad["levels"][2]["case"] = "case-9";
  CHECK_THROWS_AS(Tower::from_json(bad), std::invalid_argument);

  bad = good;
  bad["levels"].erase(1);  // leaves a level-number gap
  CHECK_THROWS_AS(Tower::from_json(bad), std::invalid_argument);
}

TEST_CASE("capacity guards refuse dense blowups") {
  CHECK_THROWS_AS(enumerate_words(17), capacity_error);
  CHECK_THROWS_AS(Word::from_index(64, 0), std::invalid_argument);

  Tower a = toy_tower('a');
  CHECK_THROWS_AS(explicit_u(a, 4), capacity_error);  // needs the opt-in flag

  TowerParams deep = toy_tower_params('b');
  deep.max_level = 31;
  CHECK_THROWS_AS(Tower::build(deep), std::invalid_argument);
}

TEST_CASE("oversized relation spaces are rejected at build time") {
  // f = 2, g = 1 with the full power-relation recipe: dim Y({x}, 4) = 3
  // exceeds the cap 2^{2^1} - 2 = 2.
  TowerParams p;
  p.f = {2};
  p.g = {1};
  RelationSlot slot;
  slot.recipe_words = {Word::parse("x")};
  p.relations = {slot};
  p.max_level = 3;
  CHECK_THROWS_AS(Tower::build(p), std::invalid_argument);

  // The same parameters with the cap relaxed build fine; the collapse is
  // padded to codimension 2 in the tensor square either way.
  p.relax_dim_bound = true;
  Tower tw = Tower::build(p);
  CHECK(tw.dim_v(2) == 2);
  CHECK(tw.level(2).lcase == LevelCase::CaseIII);
}

TEST_CASE("fault injection is caught by the invariant checks") {
  SUBCASE("an out-of-order basis word breaks the word-basis check") {
    Tower tw = toy_tower('b');
    tw.mutable_levels()[2].v_words[0] = Word::parse("yyyy");
    VerifyReport r = verify_conditions(tw, 2);
    CHECK_FALSE(r.pass());
    CHECK(check_failed(r, "word-basis"));
  }
  SUBCASE("a corrupted quotient row breaks the relation collapse") {
    Tower tw = toy_tower('b');
    // pi_1 (x) pi_1 sends x^4 to the tensor unit with index 0; flipping the
    // first quotient entry makes pi_2(x^4) nonzero.
    tw.mutable_levels()[2].q_rows[0][0] = 1;
    VerifyReport r = verify_conditions(tw, 2);
    CHECK_FALSE(r.pass());
    CHECK(check_failed(r, "relation-collapse"));
  }
}
