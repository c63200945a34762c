#include "nilgrowth/tower.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "nilgrowth/power_relations.hpp"

namespace nilgrowth {

namespace {

constexpr size_t kTensorCap = size_t(1) << 20;  // Case I/III tensor square
constexpr size_t kKernelCap = 64;               // Case III parent dimension

int64_t pow2(int k) { return int64_t(1) << k; }

int clamp_degree(int level) {
  return level <= 30 ? (1 << level) : std::numeric_limits<int>::max();
}

}  // namespace

std::vector<int64_t> t_set(const std::vector<int64_t>& f,
                           const std::vector<int64_t>& g) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("t_set: f and g must have equal length");
  }
  std::vector<int64_t> t;
  for (size_t i = 0; i < f.size(); ++i) {
    if (g[i] < 1) throw std::invalid_argument("t_set: g(i) >= 1 required");
    int64_t lo = f[i] - g[i] - 1;
    int64_t hi = f[i] - 1;
    if (i == 0) {
      if (lo < 0) {
        throw std::invalid_argument("t_set: f(1) >= g(1) + 1 required");
      }
    } else if (f[i - 1] >= lo) {
      throw std::invalid_argument(
          "t_set: f(i-1) < f(i) - g(i) - 1 required (ramps must be "
          "separated by a gap level)");
    }
    for (int64_t n = lo; n <= hi; ++n) t.push_back(n);
  }
  return t;  // sorted: ramps are increasing and disjoint
}

std::string level_case_name(LevelCase c) {
  switch (c) {
    case LevelCase::Root: return "root";
    case LevelCase::CaseI: return "I";
    case LevelCase::CaseII: return "II";
    case LevelCase::CaseIII: return "III";
  }
  throw std::logic_error("level_case_name: bad case");
}

bool Tower::t_contains(int64_t level) const {
  return std::binary_search(tset_.begin(), tset_.end(), level);
}

Word Tower::tensor_word(int parent_level, size_t tensor_index) const {
  const auto& words = level(parent_level).v_words;
  size_t t = words.size();
  return words[tensor_index / t].concat(words[tensor_index % t]);
}

CoordVec Tower::apply_q(int k, const CoordVec& tensor) const {
  const TowerLevel& lv = level(k);
  if (lv.lcase == LevelCase::Root) {
    throw std::invalid_argument("apply_q: level 0 has no quotient map");
  }
  if (lv.lcase == LevelCase::CaseI) return tensor;
  const FieldSpec& f = field();
  CoordVec out(lv.q_rows.size(), 0);
  for (size_t r = 0; r < lv.q_rows.size(); ++r) {
    uint64_t acc = 0;
    const CoordVec& q = lv.q_rows[r];
    for (size_t j = 0; j < q.size(); ++j) {
      if (q[j] != 0 && tensor[j] != 0) {
        acc += uint64_t(q[j]) * tensor[j] % f.p();
      }
    }
    out[r] = uint32_t(acc % f.p());
  }
  return out;
}

CoordVec Tower::project(int k, const Word& w) const {
  if (k < 0 || k > max_level()) {
    throw std::invalid_argument("project: level out of range");
  }
  if (int64_t(w.length()) != pow2(k)) {
    throw std::invalid_argument("project: word length must be 2^level");
  }
  std::vector<CoordVec> cur(size_t(1) << k);
  for (size_t i = 0; i < cur.size(); ++i) {
    cur[i] = w.letter(int(i)) == 0 ? CoordVec{1, 0} : CoordVec{0, 1};
  }
  for (int j = 1; j <= k; ++j) {
    std::vector<CoordVec> next(cur.size() / 2);
    for (size_t b = 0; b < next.size(); ++b) {
      next[b] = apply_q(
          j, coord_tensor(cur[2 * b], cur[2 * b + 1], field()));
    }
    cur = std::move(next);
  }
  return cur[0];
}

CoordVec Tower::project(int k, const FreeVector& v) const {
  CoordVec out(dim_v(k), 0);
  for (const auto& [w, c] : v.terms()) {
    coord_add_scaled_inplace(out, project(k, w), c, field());
  }
  return out;
}

Tower Tower::build(const TowerParams& params) {
  const FieldSpec& fld = params.field;
  if (params.max_level < 0 || params.max_level > 30) {
    throw std::invalid_argument("build: max_level must be in [0, 30]");
  }
  if (params.relations.size() != params.f.size()) {
    throw std::invalid_argument(
        "build: one relation slot per (f, g) pair required");
  }
  Tower tw;
  tw.params_ = params;
  tw.tset_ = t_set(params.f, params.g);

  TowerLevel root;
  root.level = 0;
  root.lcase = LevelCase::Root;
  root.v_words = {Word::parse("x"), Word::parse("y")};
  tw.levels_.push_back(std::move(root));

  for (int k = 1; k <= params.max_level; ++k) {
    const int64_t n = k - 1;  // parent level
    const TowerLevel& parent = tw.levels_.back();
    const size_t t = parent.v_words.size();
    TowerLevel lv;
    lv.level = k;

    if (!tw.t_contains(n)) {
      // Case II: free doubling of a 2-dimensional level.
      if (t != 2) throw std::logic_error("build: Case II expects dim 2");
      lv.lcase = LevelCase::CaseII;
      lv.v_words = {parent.v_words[0].concat(parent.v_words[0]),
                    parent.v_words[0].concat(parent.v_words[1])};
      lv.w2 = parent.v_words[1];
      lv.q_rows = {CoordVec{1, 0, 0, 0}, CoordVec{0, 1, 0, 0}};
    } else if (tw.t_contains(k)) {
      // Case I: full tensor square, the quotient map is the identity.
      if (t * t > kTensorCap) {
        throw capacity_error("build: Case I tensor square too large",
                             clamp_degree(k));
      }
      lv.lcase = LevelCase::CaseI;
      lv.v_words.reserve(t * t);
      for (size_t i = 0; i < t; ++i) {
        for (size_t j = 0; j < t; ++j) {
          lv.v_words.push_back(parent.v_words[i].concat(parent.v_words[j]));
        }
      }
    } else {
      // Case III: collapse at k = f(i).  The relation space W_i is folded
      // into the kernel of the new quotient map.
      lv.lcase = LevelCase::CaseIII;
      size_t slot_index = params.f.size();
      for (size_t i = 0; i < params.f.size(); ++i) {
        if (params.f[i] == k) slot_index = i;
      }
      if (slot_index == params.f.size()) {
        throw std::logic_error("build: collapse level without an (f, g) pair");
      }
      if (t > kKernelCap || t * t > kTensorCap) {
        throw capacity_error("build: Case III tensor square too large",
                             clamp_degree(k));
      }
      const size_t tt = t * t;

      const RelationSlot& slot = params.relations[slot_index];
      if (!slot.rows.empty() && !slot.recipe_words.empty()) {
        throw std::invalid_argument(
            "build: relation slot has both rows and a recipe");
      }
      std::vector<FreeVector> wrows = slot.rows;
      if (!slot.recipe_words.empty()) {
        wrows = power_relation_space(slot.recipe_words, pow2(k), fld,
                                     params.dense_cap)
                    .rows();
      }
      for (const FreeVector& r : wrows) {
        if (!r.is_zero() && int64_t(r.degree()) != pow2(k)) {
          throw std::invalid_argument(
              "build: relation row degree must be 2^{f(i)}");
        }
      }

      // tau = (pi_n (x) pi_n) restricted to the relation space.
      std::vector<CoordVec> taus;
      CoordSpan tau_span(fld, tt);
      const int half = 1 << int(n);
      for (const FreeVector& r : wrows) {
        CoordVec tau(tt, 0);
        for (const auto& [w, c] : r.terms()) {
          CoordVec left = tw.project(int(n), w.subword(0, half));
          CoordVec right = tw.project(int(n), w.subword(half, half));
          coord_add_scaled_inplace(tau, coord_tensor(left, right, fld), c,
                                   fld);
        }
        taus.push_back(tau);
        tau_span.insert(std::move(tau));
      }
      const int64_t gi = params.g[slot_index];
      if (!params.relax_dim_bound && gi <= 6) {
        const uint64_t cap = (uint64_t(1) << (uint64_t(1) << gi)) - 2;
        if (tau_span.dim() > cap || wrows.size() > cap) {
          throw std::invalid_argument(
              "build: relation space exceeds the dimension cap "
              "2^{2^{g(i)}} - 2");
        }
      }

      // Two order-least tensor units independent of the relation image.
      CoordSpan greedy = tau_span;
      size_t a = tt, b = tt;
      for (size_t i = 0; i < tt && b == tt; ++i) {
        CoordVec unit(tt, 0);
        unit[i] = 1;
        if (greedy.insert(std::move(unit))) {
          if (a == tt) {
            a = i;
          } else {
            b = i;
          }
        }
      }
      if (b == tt) {
        throw std::invalid_argument(
            "build: relation image has codimension < 2 in the tensor square");
      }

      // Kernel Y: the relation image plus the word complement of
      // span(image, e_a, e_b) inside the tensor square.
      CoordSpan with_ab = tau_span;
      {
        CoordVec ua(tt, 0), ub(tt, 0);
        ua[a] = 1;
        ub[b] = 1;
        with_ab.insert(std::move(ua));
        with_ab.insert(std::move(ub));
      }
      CoordSpan kernel(fld, tt);
      for (const CoordVec& tau : taus) kernel.insert(tau);
      {
        const auto& piv = with_ab.pivots();
        size_t pi = 0;
        for (size_t i = 0; i < tt; ++i) {
          while (pi < piv.size() && piv[pi] < i) ++pi;
          if (pi < piv.size() && piv[pi] == i) continue;
          CoordVec unit(tt, 0);
          unit[i] = 1;
          if (!kernel.insert(std::move(unit))) {
            throw std::logic_error("build: complement word not independent");
          }
        }
      }
      if (kernel.dim() != tt - 2) {
        throw std::logic_error("build: kernel has wrong dimension");
      }

      lv.y_rows = kernel.rows();
      lv.w1_index = a;
      lv.w2_index = b;
      lv.q_rows = projection_along(kernel, a, b);
      lv.v_words = {tw.tensor_word(int(n), a), tw.tensor_word(int(n), b)};
    }

    if (!std::is_sorted(lv.v_words.begin(), lv.v_words.end())) {
      throw std::logic_error("build: level basis not sorted");
    }
    tw.levels_.push_back(std::move(lv));
  }
  return tw;
}

nlohmann::ordered_json Tower::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "nilgrowth-tower-v1";
  j["p"] = field().p();
  j["f"] = params_.f;
  j["g"] = params_.g;
  j["max_level"] = params_.max_level;
  j["dense_cap"] = params_.dense_cap;
  j["relax_dim_bound"] = params_.relax_dim_bound;
  nlohmann::ordered_json slots = nlohmann::ordered_json::array();
  for (const RelationSlot& s : params_.relations) {
    nlohmann::ordered_json slot;
    if (!s.recipe_words.empty()) {
      nlohmann::ordered_json words = nlohmann::ordered_json::array();
      for (const Word& w : s.recipe_words) words.push_back(w.str());
      slot["recipe"] = std::move(words);
    } else {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const FreeVector& r : s.rows) rows.push_back(r.str());
      slot["rows"] = std::move(rows);
    }
    slots.push_back(std::move(slot));
  }
  j["relations"] = std::move(slots);
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (const TowerLevel& lv : levels_) {
    nlohmann::ordered_json l;
    l["level"] = lv.level;
    l["case"] = level_case_name(lv.lcase);
    nlohmann::ordered_json words = nlohmann::ordered_json::array();
    for (const Word& w : lv.v_words) words.push_back(w.str());
    l["v_words"] = std::move(words);
    if (lv.lcase == LevelCase::CaseII) {
      l["w2"] = lv.w2->str();
    } else if (lv.lcase == LevelCase::CaseIII) {
      l["w1_index"] = lv.w1_index;
      l["w2_index"] = lv.w2_index;
      l["y_rows"] = lv.y_rows;
    }
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

Tower Tower::from_json(const nlohmann::ordered_json& j) {
  if (!j.contains("format") || j["format"] != "nilgrowth-tower-v1") {
    throw std::invalid_argument("from_json: unknown tower format");
  }
  TowerParams params;
  params.field = FieldSpec(j.at("p").get<uint32_t>());
  params.f = j.at("f").get<std::vector<int64_t>>();
  params.g = j.at("g").get<std::vector<int64_t>>();
  params.max_level = j.at("max_level").get<int>();
  params.dense_cap = j.at("dense_cap").get<int>();
  params.relax_dim_bound = j.at("relax_dim_bound").get<bool>();
  for (const auto& slot : j.at("relations")) {
    RelationSlot s;
    if (slot.contains("recipe")) {
      for (const auto& w : slot["recipe"]) {
        s.recipe_words.push_back(Word::parse(w.get<std::string>()));
      }
    } else {
      for (const auto& r : slot["rows"]) {
        s.rows.push_back(FreeVector::parse(r.get<std::string>(), params.field));
      }
    }
    params.relations.push_back(std::move(s));
  }

  Tower tw;
  tw.params_ = params;
  tw.tset_ = t_set(params.f, params.g);
  for (const auto& l : j.at("levels")) {
    TowerLevel lv;
    lv.level = l.at("level").get<int>();
    if (lv.level != int(tw.levels_.size())) {
      throw std::invalid_argument("from_json: level gap");
    }
    std::string cname = l.at("case").get<std::string>();
    for (const auto& w : l.at("v_words")) {
      lv.v_words.push_back(Word::parse(w.get<std::string>()));
    }
    if (cname == "root") {
      lv.lcase = LevelCase::Root;
    } else if (cname == "I") {
      lv.lcase = LevelCase::CaseI;
    } else if (cname == "II") {
      lv.lcase = LevelCase::CaseII;
      lv.w2 = Word::parse(l.at("w2").get<std::string>());
      lv.q_rows = {CoordVec{1, 0, 0, 0}, CoordVec{0, 1, 0, 0}};
    } else if (cname == "III") {
      lv.lcase = LevelCase::CaseIII;
      lv.w1_index = l.at("w1_index").get<size_t>();
      lv.w2_index = l.at("w2_index").get<size_t>();
      lv.y_rows = l.at("y_rows").get<std::vector<CoordVec>>();
      // Rebuild the quotient matrix from its stored kernel.
      size_t parent_dim = tw.levels_.back().v_words.size();
      CoordSpan kernel(params.field, parent_dim * parent_dim);
      for (const CoordVec& r : lv.y_rows) kernel.insert(r);
      if (kernel.dim() != lv.y_rows.size()) {
        throw std::invalid_argument("from_json: kernel rows dependent");
      }
      lv.q_rows = projection_along(kernel, lv.w1_index, lv.w2_index);
    } else {
      throw std::invalid_argument("from_json: unknown level case");
    }
    tw.levels_.push_back(std::move(lv));
  }
  if (int(tw.levels_.size()) != params.max_level + 1) {
    throw std::invalid_argument("from_json: level count mismatch");
  }
  return tw;
}

}  // namespace nilgrowth
