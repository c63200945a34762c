#include "nilgrowth/verify.hpp"

#include <algorithm>
#include <sstream>

#include "nilgrowth/explicit_u.hpp"
#include "nilgrowth/family.hpp"
#include "nilgrowth/power_relations.hpp"

namespace nilgrowth {

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["p"] = p;
  j["kmax"] = kmax;
  j["pass"] = pass();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["checks"] = std::move(arr);
  return j;
}

namespace {

std::vector<FreeVector> relation_rows(const Tower& tw, size_t slot) {
  const RelationSlot& s = tw.params().relations[slot];
  if (!s.recipe_words.empty()) {
    return power_relation_space(s.recipe_words,
                                int64_t(1) << tw.params().f[slot],
                                tw.field(), tw.params().dense_cap)
        .rows();
  }
  return s.rows;
}

}  // namespace

bool projection_matches_kernel(const Tower& tw, int k) {
  if (k > 3) throw std::invalid_argument("projection_matches_kernel: k <= 3");
  const FieldSpec& f = tw.field();
  EchelonSubspace u = explicit_u(tw, k);
  const auto& vwords = tw.level(k).v_words;
  for (const Word& w : enumerate_words(1 << k)) {
    CoordVec c = tw.project(k, w);
    FreeVector r = FreeVector::unit(w);
    for (size_t j = 0; j < vwords.size(); ++j) {
      if (c[j] != 0) {
        r = r.sub(FreeVector::unit(vwords[j]).scale(c[j], f), f);
      }
    }
    if (!u.contains(r)) return false;
  }
  return true;
}

VerifyReport verify_conditions(const Tower& tw, int kmax) {
  if (kmax < 0 || kmax > tw.max_level()) {
    throw std::invalid_argument("verify_conditions: kmax out of range");
  }
  const FieldSpec& f = tw.field();
  VerifyReport rep;
  rep.p = f.p();
  rep.kmax = kmax;

  const int kdense = std::min(kmax, 3);
  std::vector<EchelonSubspace> u;  // dense kernels, levels 0..kdense
  for (int k = 0; k <= kdense; ++k) u.push_back(explicit_u(tw, k));

  {  // complement: U(2^k) (+) V(2^k) = A(2^k)
    CheckResult c{"complement", true, ""};
    std::ostringstream det;
    for (int k = 0; k <= kdense; ++k) {
      const uint64_t full = uint64_t(1) << (uint64_t(1) << k);
      const uint64_t udim = u[size_t(k)].dim();
      const uint64_t vdim = tw.dim_v(k);
      const uint64_t sum =
          span_sum(u[size_t(k)], explicit_v(tw, k)).dim();
      if (udim + vdim != full || sum != full) c.pass = false;
      det << "k=" << k << ":" << udim << "+" << vdim << " ";
    }
    c.detail = det.str();
    rep.checks.push_back(std::move(c));
  }

  {  // gap-dimension
    CheckResult c{"gap-dimension", true, ""};
    for (int n = 0; n <= kmax; ++n) {
      if (!tw.t_contains(n) && tw.dim_v(n) != 2) c.pass = false;
    }
    rep.checks.push_back(std::move(c));
  }

  {  // ramp-dimension
    CheckResult c{"ramp-dimension", true, ""};
    const auto& p = tw.params();
    for (size_t i = 0; i < p.f.size(); ++i) {
      for (int64_t j = 0; j <= p.g[i]; ++j) {
        int64_t n = p.f[i] - p.g[i] - 1 + j;
        if (n > kmax) break;
        if (j > 4) break;  // dims past 2^16 never materialize
        const uint64_t want = uint64_t(1) << (uint64_t(1) << j);
        if (tw.dim_v(int(n)) != want) c.pass = false;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  {  // word-basis
    CheckResult c{"word-basis", true, ""};
    for (int k = 0; k <= kmax; ++k) {
      const auto& words = tw.level(k).v_words;
      if (!std::is_sorted(words.begin(), words.end()) ||
          std::adjacent_find(words.begin(), words.end()) != words.end()) {
        c.pass = false;
      }
      for (const Word& w : words) {
        if (int64_t(w.length()) != int64_t(1) << k) c.pass = false;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  {  // relation-collapse
    CheckResult c{"relation-collapse", true, ""};
    std::ostringstream det;
    const auto& p = tw.params();
    for (size_t i = 0; i < p.f.size(); ++i) {
      if (p.f[i] > kmax) continue;
      size_t rows = 0;
      for (const FreeVector& r : relation_rows(tw, i)) {
        ++rows;
        if (!coord_is_zero(tw.project(int(p.f[i]), r))) c.pass = false;
      }
      det << "slot" << (i + 1) << ":" << rows << "rows ";
    }
    c.detail = det.str();
    rep.checks.push_back(std::move(c));
  }

  {  // kernel-ideal
    CheckResult c{"kernel-ideal", true, ""};
    std::ostringstream det;
    uint64_t dense_checks = 0, span_checks = 0;
    for (int k = 1; k + 1 <= kdense; ++k) {
      for (const FreeVector& row : u[size_t(k)].rows()) {
        for (const Word& a : enumerate_words(1 << k)) {
          FreeVector av = FreeVector::unit(a).mul(row, f);
          FreeVector va = row.mul(FreeVector::unit(a), f);
          dense_checks += 2;
          if (!u[size_t(k + 1)].contains(av) ||
              !u[size_t(k + 1)].contains(va)) {
            c.pass = false;
          }
        }
      }
    }
    for (int k = kdense; k + 1 <= kmax && k <= 3; ++k) {
      for (const FreeVector& row : u[size_t(k)].rows()) {
        span_checks += 2;
        if (family_span(tw, k + 1,
                        {PatternSlot::of(row), PatternSlot::any(1 << k)})
                    .dim() != 0 ||
            family_span(tw, k + 1,
                        {PatternSlot::any(1 << k), PatternSlot::of(row)})
                    .dim() != 0) {
          c.pass = false;
        }
      }
    }
    det << "dense=" << dense_checks << " spanned=" << span_checks;
    c.detail = det.str();
    rep.checks.push_back(std::move(c));
  }

  {  // basis-products
    CheckResult c{"basis-products", true, ""};
    for (int k = 1; k <= kmax; ++k) {
      const auto& parent = tw.level(k - 1).v_words;
      const int half = 1 << (k - 1);
      for (const Word& w : tw.level(k).v_words) {
        if (!std::binary_search(parent.begin(), parent.end(),
                                w.subword(0, half)) ||
            !std::binary_search(parent.begin(), parent.end(),
                                w.subword(half, half))) {
          c.pass = false;
        }
      }
      const TowerLevel& lv = tw.level(k);
      if (lv.lcase == LevelCase::CaseII) {
        const Word& w1 = parent[0];
        if (lv.v_words[0] != w1.concat(w1) ||
            lv.v_words[1] != w1.concat(*lv.w2)) {
          c.pass = false;
        }
      }
    }
    rep.checks.push_back(std::move(c));
  }

  {  // gap-span
    CheckResult c{"gap-span", true, ""};
    uint64_t count = 0;
    for (int n = 0; n + 1 <= kmax; ++n) {
      if (tw.t_contains(n)) continue;
      const TowerLevel& lv = tw.level(n + 1);
      ++count;
      if (family_span(tw, n + 1,
                      {PatternSlot::of(FreeVector::unit(*lv.w2)),
                       PatternSlot::any(1 << n)})
              .dim() != 0) {
        c.pass = false;
      }
    }
    c.detail = "levels=" + std::to_string(count);
    rep.checks.push_back(std::move(c));
  }

  {  // aligned-absorption
    CheckResult c{"aligned-absorption", true, ""};
    uint64_t dense_spots = 0, span_spots = 0;
    for (int pe = 1; pe <= kdense; ++pe) {
      for (int m = 0; m < pe; ++m) {
        if (u[size_t(m)].dim() == 0) continue;
        for (int64_t q = 0; q < (int64_t(1) << (pe - m)); ++q) {
          EchelonSubspace left = EchelonSubspace::full_space(
              f, int(q) << m);
          EchelonSubspace right = EchelonSubspace::full_space(
              f, (1 << pe) - ((int(q) + 1) << m));
          EchelonSubspace prod =
              span_product(span_product(left, u[size_t(m)]), right);
          ++dense_spots;
          for (const FreeVector& row : prod.rows()) {
            if (!u[size_t(pe)].contains(row)) c.pass = false;
          }
        }
      }
    }
    if (kmax >= 4) {
      const int pe = 4;
      for (int m = 1; m <= 3; ++m) {
        for (const FreeVector& row : u[size_t(m)].rows()) {
          for (int64_t q = 0; q < (int64_t(1) << (pe - m)); ++q) {
            ++span_spots;
            if (family_span(tw, pe,
                            {PatternSlot::any(q << m), PatternSlot::of(row),
                             PatternSlot::any((1 << pe) -
                                              ((q + 1) << m))})
                    .dim() != 0) {
              c.pass = false;
            }
          }
        }
      }
    }
    c.detail = "dense=" + std::to_string(dense_spots) +
               " spanned=" + std::to_string(span_spots);
    rep.checks.push_back(std::move(c));
  }

  return rep;
}

}  // namespace nilgrowth
