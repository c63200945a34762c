#include "nilgrowth/family.hpp"

#include <map>
#include <stdexcept>

namespace nilgrowth {

namespace {

struct SplitResult {
  std::vector<Pattern> left;
  std::vector<Pattern> right;
  // Child index range [begin, end) feeding each parent parallel.
  std::vector<std::pair<size_t, size_t>> ranges;
};

// Cuts every parallel at `mid` letters.  A fixed slot straddling the cut
// fans out into one child pair per distinct prefix of its support; free
// slots and boundary cuts split one-to-one.
SplitResult split_parallels(const std::vector<Pattern>& parallels,
                            int64_t mid, const FieldSpec& f) {
  // Locate the cut in the shared slot shape.
  const Pattern& shape = parallels.front();
  size_t idx = 0;
  int64_t pos = 0;
  bool boundary = false;
  for (;; ++idx) {
    if (pos == mid) {
      boundary = true;
      break;
    }
    if (idx >= shape.size()) {
      throw std::logic_error("family: cut past pattern end");
    }
    if (pos + shape[idx].len > mid) break;  // inside slot idx
    pos += shape[idx].len;
  }
  const int64_t off = mid - pos;

  SplitResult out;
  for (const Pattern& par : parallels) {
    size_t begin = out.left.size();
    if (boundary) {
      out.left.emplace_back(par.begin(), par.begin() + idx);
      out.right.emplace_back(par.begin() + idx, par.end());
    } else if (par[idx].free) {
      Pattern l(par.begin(), par.begin() + idx);
      l.push_back(PatternSlot::any(off));
      Pattern r{PatternSlot::any(par[idx].len - off)};
      r.insert(r.end(), par.begin() + idx + 1, par.end());
      out.left.push_back(std::move(l));
      out.right.push_back(std::move(r));
    } else {
      // Group the fixed vector's terms by their length-`off` prefix.
      std::map<Word, std::vector<FreeVector::Term>> groups;
      const int64_t suf_len = par[idx].len - off;
      for (const auto& [w, c] : par[idx].fixed.terms()) {
        groups[w.subword(0, int(off))].emplace_back(
            w.subword(int(off), int(suf_len)), c);
      }
      for (auto& [pre, sufterms] : groups) {
        Pattern l(par.begin(), par.begin() + idx);
        l.push_back(PatternSlot::of(FreeVector::unit(pre)));
        Pattern r{PatternSlot::of(
            FreeVector::make(int(suf_len), std::move(sufterms), f))};
        r.insert(r.end(), par.begin() + idx + 1, par.end());
        out.left.push_back(std::move(l));
        out.right.push_back(std::move(r));
      }
    }
    out.ranges.emplace_back(begin, out.left.size());
  }
  return out;
}

// Span of the stacked values (pi_k(inst_1), ..., pi_k(inst_P)) over all
// instantiations; ambient P * dim V(2^k).
CoordSpan solve(const Tower& tw, int k,
                const std::vector<Pattern>& parallels) {
  const FieldSpec& f = tw.field();
  const size_t t = tw.dim_v(k);
  const size_t P = parallels.size();
  if (P * t > (size_t(1) << 20)) {
    throw capacity_error("family: stacked span too large", 1 << k);
  }
  CoordSpan out(f, P * t);

  if (parallels.front().size() == 1) {
    if (parallels.front()[0].free) {
      // One shared free word: the stacked value replicates pi_k(w), and
      // pi_k is onto, so the span is the diagonal copy of V(2^k).
      for (size_t j = 0; j < t; ++j) {
        CoordVec row(P * t, 0);
        for (size_t p = 0; p < P; ++p) row[p * t + j] = 1;
        out.insert(std::move(row));
      }
    } else {
      CoordVec row(P * t, 0);
      for (size_t p = 0; p < P; ++p) {
        CoordVec c = tw.project(k, parallels[p][0].fixed);
        for (size_t j = 0; j < t; ++j) row[p * t + j] = c[j];
      }
      out.insert(std::move(row));
    }
    return out;
  }

  SplitResult sp = split_parallels(parallels, int64_t(1) << (k - 1), f);
  CoordSpan ls = solve(tw, k - 1, sp.left);
  CoordSpan rs = solve(tw, k - 1, sp.right);
  const size_t tp = tw.dim_v(k - 1);

  // Both halving maps are bilinear in (left tuple, right tuple), so basis
  // pairs of the child spans span the full image.
  for (const CoordVec& u : ls.rows()) {
    for (const CoordVec& v : rs.rows()) {
      CoordVec val(P * t, 0);
      for (size_t p = 0; p < P; ++p) {
        CoordVec z(tp * tp, 0);
        for (size_t c = sp.ranges[p].first; c < sp.ranges[p].second; ++c) {
          for (size_t i = 0; i < tp; ++i) {
            const uint32_t ui = u[c * tp + i];
            if (ui == 0) continue;
            for (size_t j = 0; j < tp; ++j) {
              const uint32_t vj = v[c * tp + j];
              if (vj == 0) continue;
              z[i * tp + j] = f.add(z[i * tp + j], f.mul(ui, vj));
            }
          }
        }
        CoordVec w = tw.apply_q(k, z);
        for (size_t j = 0; j < t; ++j) val[p * t + j] = w[j];
      }
      out.insert(std::move(val));
      if (out.dim() == P * t) return out;
    }
  }
  return out;
}

// Drops zero-length free slots; reports whether a fixed slot is zero (the
// whole family is then zero).
bool normalize_pattern(const Pattern& in, Pattern& out) {
  for (const PatternSlot& s : in) {
    if (s.free) {
      if (s.len < 0) throw std::invalid_argument("pattern: negative length");
      if (s.len == 0) continue;
      out.push_back(s);
    } else {
      if (s.fixed.is_zero()) return false;
      if (s.fixed.degree() == 0) {
        throw std::invalid_argument("pattern: degree-0 fixed slot");
      }
      out.push_back(s);
    }
  }
  return true;
}

}  // namespace

int64_t pattern_degree(const Pattern& pattern) {
  int64_t d = 0;
  for (const PatternSlot& s : pattern) d += s.len;
  return d;
}

CoordSpan family_span(const Tower& tw, int k, const Pattern& pattern) {
  if (k < 0 || k > tw.max_level()) {
    throw std::invalid_argument("family_span: level out of range");
  }
  if (pattern_degree(pattern) != int64_t(1) << k) {
    throw std::invalid_argument("family_span: pattern degree != 2^k");
  }
  Pattern norm;
  if (!normalize_pattern(pattern, norm)) {
    return CoordSpan(tw.field(), tw.dim_v(k));
  }
  if (norm.empty()) {
    throw std::invalid_argument("family_span: empty pattern");
  }
  return solve(tw, k, {norm});
}

CoordSpan pair_span(const Tower& tw, int level, const Pattern& pattern) {
  if (level < 0 || level > tw.max_level()) {
    throw std::invalid_argument("pair_span: level out of range");
  }
  if (pattern_degree(pattern) != int64_t(1) << (level + 1)) {
    throw std::invalid_argument("pair_span: pattern degree != 2^{level+1}");
  }
  const FieldSpec& f = tw.field();
  const size_t tp = tw.dim_v(level);
  Pattern norm;
  if (!normalize_pattern(pattern, norm)) {
    return CoordSpan(f, tp * tp);
  }
  SplitResult sp = split_parallels({norm}, int64_t(1) << level, f);
  CoordSpan ls = solve(tw, level, sp.left);
  CoordSpan rs = solve(tw, level, sp.right);
  CoordSpan out(f, tp * tp);
  for (const CoordVec& u : ls.rows()) {
    for (const CoordVec& v : rs.rows()) {
      CoordVec z(tp * tp, 0);
      for (size_t c = sp.ranges[0].first; c < sp.ranges[0].second; ++c) {
        for (size_t i = 0; i < tp; ++i) {
          const uint32_t ui = u[c * tp + i];
          if (ui == 0) continue;
          for (size_t j = 0; j < tp; ++j) {
            const uint32_t vj = v[c * tp + j];
            if (vj == 0) continue;
            z[i * tp + j] = f.add(z[i * tp + j], f.mul(ui, vj));
          }
        }
      }
      out.insert(std::move(z));
      if (out.dim() == tp * tp) return out;
    }
  }
  return out;
}

}  // namespace nilgrowth
