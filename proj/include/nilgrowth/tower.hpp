#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilgrowth/coord.hpp"
#include "nilgrowth/echelon.hpp"
#include "nilgrowth/field.hpp"
#include "nilgrowth/free_vector.hpp"

namespace nilgrowth {

// Relation space attached to step i of the parameter sequence: either
// materialized rows of degree 2^{f(i)}, or a word set from which the
// power-relation space of that degree is generated on demand.
struct RelationSlot {
  std::vector<FreeVector> rows;
  std::vector<Word> recipe_words;  // non-empty: rows = power_relation_space
};

struct TowerParams {
  FieldSpec field{2};
  std::vector<int64_t> f;  // f(1..r) stored at indices 0..r-1
  std::vector<int64_t> g;
  std::vector<RelationSlot> relations;  // one slot per (f, g) pair
  int max_level = 0;                    // build levels 0..max_level
  int dense_cap = kDefaultDenseCap;
  // Admits relation spaces larger than the doubly-exponential cap
  // 2^{2^{g(i)}} - 2 (the construction itself only needs codimension >= 2
  // in the tensor square; the cap matters for the growth bookkeeping).
  bool relax_dim_bound = false;
};

// Sorted union of the collapse ramps {f(i)-g(i)-1, ..., f(i)-1}.  Validates
// g(i) >= 1, f(1) >= g(1) + 1 (ramps start at level >= 0) and strict
// separation f(i-1) < f(i) - g(i) - 1 for i >= 2, so that consecutive ramps
// are disjoint with a gap level between them.
std::vector<int64_t> t_set(const std::vector<int64_t>& f,
                           const std::vector<int64_t>& g);

enum class LevelCase { Root, CaseI, CaseII, CaseIII };

std::string level_case_name(LevelCase c);

// One graded level n of the tower: the word basis of V(2^n) together with
// the data of the quotient map from V(2^{n-1}) (x) V(2^{n-1}) coordinates
// onto V(2^n) coordinates.
struct TowerLevel {
  int level = 0;
  LevelCase lcase = LevelCase::Root;
  std::vector<Word> v_words;  // basis of V(2^level), sorted, pairwise distinct

  // Case II: the excluded second basis word of the previous level.
  std::optional<Word> w2;

  // Case III: echelonized kernel of the quotient map in parent tensor
  // coordinates, and the tensor indices of the two surviving words.
  std::vector<CoordVec> y_rows;
  size_t w1_index = 0;
  size_t w2_index = 0;

  // Quotient matrix (dim V(2^level) rows of parent tensor length).  Empty
  // for Root and Case I, where the map is the identity in the fixed order.
  std::vector<CoordVec> q_rows;
};

// The recursive subspace chain V(2^n), U(2^n) = ker pi_n of the graded free
// algebra, built level by level.  pi_n is represented by its values in the
// v_words coordinate basis; U is never materialized here (see explicit_u
// and family_span for the two ways of touching it).
class Tower {
public:
  static Tower build(const TowerParams& params);

  const TowerParams& params() const { return params_; }
  const FieldSpec& field() const { return params_.field; }
  int max_level() const { return params_.max_level; }
  const std::vector<int64_t>& tset() const { return tset_; }
  bool t_contains(int64_t level) const;
  const TowerLevel& level(int k) const { return levels_.at(size_t(k)); }
  size_t dim_v(int k) const { return levels_.at(size_t(k)).v_words.size(); }

  // pi_k applied to a word of length 2^k / a homogeneous vector of degree
  // 2^k, in V(2^k) coordinates.
  CoordVec project(int k, const Word& w) const;
  CoordVec project(int k, const FreeVector& v) const;

  // Applies the level-k quotient matrix to a vector in V(2^{k-1}) tensor
  // coordinates (k >= 1).
  CoordVec apply_q(int k, const CoordVec& tensor) const;

  // Product word of tensor index (i, j) -> i * dim + j at parent level.
  Word tensor_word(int parent_level, size_t tensor_index) const;

  nlohmann::ordered_json to_json() const;
  static Tower from_json(const nlohmann::ordered_json& j);

  // Mutable level access for fault-injection diagnostics; a corrupted tower
  // is exactly what verify_conditions must detect.
  std::vector<TowerLevel>& mutable_levels() { return levels_; }

private:
  Tower() = default;

  TowerParams params_;
  std::vector<int64_t> tset_;
  std::vector<TowerLevel> levels_;
};

}  // namespace nilgrowth
