#include "nilgrowth/explicit_u.hpp"

#include <stdexcept>

namespace nilgrowth {

EchelonSubspace explicit_v(const Tower& tw, int k) {
  EchelonSubspace v(tw.field(), 1 << k);
  for (const Word& w : tw.level(k).v_words) {
    v.insert(FreeVector::unit(w));
  }
  return v;
}

EchelonSubspace explicit_u(const Tower& tw, int k, bool allow_degree16) {
  if (k < 0 || k > tw.max_level()) {
    throw std::invalid_argument("explicit_u: level out of range");
  }
  if (k > 4 || (k == 4 && !allow_degree16)) {
    throw capacity_error("explicit_u: dense kernel limited to degree 8",
                         1 << k);
  }
  const FieldSpec& f = tw.field();
  if (k == 0) return EchelonSubspace(f, 1);

  EchelonSubspace u_prev = explicit_u(tw, k - 1, allow_degree16);
  EchelonSubspace full_prev = EchelonSubspace::full_space(f, 1 << (k - 1));
  const TowerLevel& lv = tw.level(k);

  switch (lv.lcase) {
    case LevelCase::Root:
      throw std::logic_error("explicit_u: root is not a transition");
    case LevelCase::CaseI:
      return span_sum(span_product(full_prev, u_prev),
                      span_product(u_prev, full_prev));
    case LevelCase::CaseII: {
      EchelonSubspace w2(f, 1 << (k - 1));
      w2.insert(FreeVector::unit(*lv.w2));
      return span_sum(span_sum(span_product(full_prev, u_prev),
                               span_product(u_prev, full_prev)),
                      span_product(w2, explicit_v(tw, k - 1)));
    }
    case LevelCase::CaseIII: {
      EchelonSubspace out = span_sum(
          span_product(u_prev, full_prev),
          span_product(explicit_v(tw, k - 1), u_prev));
      const size_t tp = tw.dim_v(k - 1);
      for (const CoordVec& y : lv.y_rows) {
        FreeVector amb(1 << k);
        for (size_t j = 0; j < tp * tp; ++j) {
          if (y[j] != 0) {
            amb = amb.add(
                FreeVector::unit(tw.tensor_word(k - 1, j)).scale(y[j], f), f);
          }
        }
        out.insert(amb);
      }
      return out;
    }
  }
  throw std::logic_error("explicit_u: bad case");
}

}  // namespace nilgrowth
