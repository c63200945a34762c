#include "nilgrowth/growth_ideal.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "nilgrowth/family.hpp"
#include "nilgrowth/explicit_u.hpp"

namespace nilgrowth {

namespace {

// m with 2^m <= n < 2^{m+1}.
int64_t align_exponent(int64_t n) {
  if (n < 1) throw std::invalid_argument("alignment requires degree >= 1");
  int64_t m = 0;
  while ((int64_t(1) << (m + 1)) <= n) ++m;
  return m;
}

void require_level(const Tower& tw, int64_t level, const char* what) {
  if (level > tw.max_level()) {
    throw std::invalid_argument(std::string(what) +
                                ": tower is built to level " +
                                std::to_string(tw.max_level()) +
                                " but level " + std::to_string(level) +
                                " is needed");
  }
}

mpz_class pow2(unsigned long e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

// Memoized pi_level over the words of one fixed length <= 16; the cofactor
// sweeps revisit each word many times.
class ProjCache {
public:
  ProjCache(const Tower& tw, int level, int length)
      : tw_(tw), level_(level), cache_(size_t(1) << length) {}

  const CoordVec& get(const Word& w) {
    CoordVec& slot = cache_[w.index()];
    if (slot.empty()) slot = tw_.project(level_, w);
    return slot;
  }

private:
  const Tower& tw_;
  int level_;
  std::vector<CoordVec> cache_;
};

// Inserts, for one fixed cofactor pair (a, b), the coordinate functionals
// w -> (pi (x) pi)(a w b) into the constraint span.  Returns early when the
// span is already full.
void insert_pair_constraints(const Tower& tw, int level,
                             const std::vector<Word>& inner,
                             const Word& a, const Word& b,
                             EchelonSubspace& constraints, ProjCache& cache) {
  const FieldSpec& f = tw.field();
  int64_t half = int64_t(1) << level;
  size_t t = tw.dim_v(level);
  size_t tt = t * t;
  int degree = inner.empty() ? 0 : inner.front().length();
  std::vector<std::vector<FreeVector::Term>> rows(tt);
  for (const Word& w : inner) {
    Word full = a.concat(w).concat(b);
    const CoordVec& pl = cache.get(full.subword(0, int(half)));
    const CoordVec& pr = cache.get(full.subword(int(half), int(half)));
    for (size_t i = 0; i < t; ++i) {
      if (pl[i] == 0) continue;
      for (size_t j = 0; j < t; ++j) {
        uint32_t c = f.mul(pl[i], pr[j]);
        if (c != 0) rows[i * t + j].emplace_back(w, c);
      }
    }
  }
  for (auto& terms : rows) {
    if (terms.empty()) continue;
    constraints.insert(FreeVector::make(degree, std::move(terms), f));
    if (constraints.dim() == (size_t(1) << degree)) return;
  }
}

}  // namespace

nlohmann::ordered_json BoundarySpaces::to_json() const {
  auto side = [](const BoundaryPair& p) {
    nlohmann::ordered_json j;
    j["dim"] = p.kernel.dim();
    auto words = nlohmann::ordered_json::array();
    for (const Word& w : p.complement) words.push_back(w.str());
    j["complement"] = std::move(words);
    j["complete"] = p.complete;
    return j;
  };
  nlohmann::ordered_json j;
  j["n"] = n;
  j["left"] = side(left);
  j["right"] = side(right);
  return j;
}

std::vector<Word> chain_words(const Tower& tw, int64_t n, bool ascending) {
  if (n < 1) throw std::invalid_argument("chain words require n >= 1");
  std::vector<int> exps = binary_expansion(uint64_t(n));
  if (!ascending) std::reverse(exps.begin(), exps.end());
  require_level(tw, exps.empty() ? 0 : *std::max_element(exps.begin(),
                                                         exps.end()),
                "chain words");
  std::vector<Word> acc{Word()};
  for (int e : exps) {
    const std::vector<Word>& basis = tw.level(e).v_words;
    std::vector<Word> next;
    next.reserve(acc.size() * basis.size());
    for (const Word& w : acc) {
      for (const Word& vw : basis) next.push_back(w.concat(vw));
    }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

BoundarySpaces boundary_spaces(const Tower& tw, int64_t n) {
  if (n < 1) throw std::invalid_argument("boundary spaces require n >= 1");
  if (n > 12) {
    throw capacity_error("boundary spaces are dense in A(n); n <= 12",
                         int(n));
  }
  int64_t m = align_exponent(n);
  int level = int(m + 1);
  require_level(tw, level, "boundary spaces");
  const FieldSpec& f = tw.field();
  int64_t blen = (int64_t(1) << level) - n;
  std::vector<Word> inner = enumerate_words(int(n));
  std::vector<Word> cof = enumerate_words(int(blen));
  size_t t = tw.dim_v(level);

  ProjCache cache(tw, level, 1 << level);
  auto kernel_of = [&](bool left_side) {
    EchelonSubspace constraints(f, int(n), tw.params().dense_cap);
    for (const Word& b : cof) {
      if (constraints.dim() == (size_t(1) << n)) break;
      std::vector<std::vector<FreeVector::Term>> rows(t);
      for (const Word& w : inner) {
        Word full = left_side ? w.concat(b) : b.concat(w);
        const CoordVec& img = cache.get(full);
        for (size_t i = 0; i < t; ++i) {
          if (img[i] != 0) rows[i].emplace_back(w, img[i]);
        }
      }
      for (auto& terms : rows) {
        if (terms.empty()) continue;
        constraints.insert(FreeVector::make(int(n), std::move(terms), f));
      }
    }
    return nullspace_of(constraints);
  };

  BoundarySpaces out{n,
                     {kernel_of(true), {}, false},
                     {kernel_of(false), {}, false}};
  std::vector<Word> desc = chain_words(tw, n, /*ascending=*/false);
  std::vector<Word> asc = chain_words(tw, n, /*ascending=*/true);
  out.left.complement = word_complement_within(out.left.kernel, desc);
  out.right.complement = word_complement_within(out.right.kernel, asc);
  out.left.complete =
      out.left.kernel.dim() + out.left.complement.size() == (size_t(1) << n);
  out.right.complete =
      out.right.kernel.dim() + out.right.complement.size() ==
      (size_t(1) << n);
  return out;
}

EchelonSubspace ideal_component(const Tower& tw, int64_t n) {
  if (n < 1) throw std::invalid_argument("ideal component requires n >= 1");
  if (n > 7) {
    throw capacity_error(
        "dense ideal component walks all aligned cofactors; n <= 7", int(n));
  }
  int64_t m = align_exponent(n);
  int level = int(m + 1);
  require_level(tw, level, "ideal component");
  const FieldSpec& f = tw.field();
  int64_t d = int64_t(1) << (m + 2);
  std::vector<Word> inner = enumerate_words(int(n));
  EchelonSubspace constraints(f, int(n), tw.params().dense_cap);
  ProjCache cache(tw, level, 1 << level);
  for (int64_t j = 0; j <= d - n && constraints.dim() < (size_t(1) << n);
       ++j) {
    std::vector<Word> lefts = enumerate_words(int(j));
    std::vector<Word> rights = enumerate_words(int(d - n - j));
    for (const Word& a : lefts) {
      if (constraints.dim() == (size_t(1) << n)) break;
      for (const Word& b : rights) {
        insert_pair_constraints(tw, level, inner, a, b, constraints, cache);
        if (constraints.dim() == (size_t(1) << n)) break;
      }
    }
  }
  return nullspace_of(constraints);
}

EchelonSubspace ideal_component_oracle(const Tower& tw, int64_t n) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("the dense ideal oracle covers n in [1, 3]");
  }
  int64_t m = align_exponent(n);
  int level = int(m + 1);
  require_level(tw, level, "ideal oracle");
  const FieldSpec& f = tw.field();
  int64_t d = int64_t(1) << (m + 2);
  int64_t half = int64_t(1) << level;
  EchelonSubspace u = explicit_u(tw, level);
  EchelonSubspace ahalf =
      EchelonSubspace::full_space(f, int(half), tw.params().dense_cap);
  EchelonSubspace two_sided =
      span_sum(span_product(u, ahalf), span_product(ahalf, u));
  std::vector<Word> inner = enumerate_words(int(n));
  EchelonSubspace constraints(f, int(n), tw.params().dense_cap);
  for (int64_t j = 0; j <= d - n && constraints.dim() < (size_t(1) << n);
       ++j) {
    for (const Word& a : enumerate_words(int(j))) {
      for (const Word& b : enumerate_words(int(d - n - j))) {
        std::unordered_map<Word, std::vector<FreeVector::Term>, WordHash>
            by_coord;
        for (const Word& w : inner) {
          FreeVector r =
              two_sided.residual(FreeVector::unit(a.concat(w).concat(b)));
          for (const auto& [u_word, c] : r.terms()) {
            by_coord[u_word].emplace_back(w, c);
          }
        }
        for (auto& [u_word, terms] : by_coord) {
          constraints.insert(FreeVector::make(int(n), std::move(terms), f));
        }
        if (constraints.dim() == (size_t(1) << n)) break;
      }
      if (constraints.dim() == (size_t(1) << n)) break;
    }
  }
  return nullspace_of(constraints);
}

uint64_t quotient_dim(const Tower& tw, int64_t n) {
  if (n < 0) throw std::invalid_argument("quotient dimension requires n >= 0");
  if (n == 0) return 1;
  return (uint64_t(1) << n) - ideal_component(tw, n).dim();
}

nlohmann::ordered_json IdealCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["element"] = element;
  j["degree"] = degree;
  j["m"] = m;
  j["contained"] = contained;
  j["checks"] = nlohmann::ordered_json::array();
  for (const IdealSliceCheck& c : checks) {
    j["checks"].push_back({{"j", c.j}, {"span_dim", c.span_dim}});
  }
  return j;
}

IdealCertificate ideal_contains(const Tower& tw, const FreeVector& v) {
  IdealCertificate cert;
  cert.element = v.str();
  cert.degree = v.degree();
  if (v.is_zero()) {
    cert.m = 0;
    cert.contained = true;
    return cert;
  }
  if (v.degree() == 0) {
    cert.m = 0;
    cert.contained = false;  // nonzero scalars never vanish
    return cert;
  }
  int64_t n = v.degree();
  int64_t m = align_exponent(n);
  int level = int(m + 1);
  require_level(tw, level, "ideal membership");
  int64_t d = int64_t(1) << (m + 2);
  cert.m = m;
  cert.contained = true;
  for (int64_t j = 0; j <= d - n; ++j) {
    Pattern pat;
    if (j > 0) pat.push_back(PatternSlot::any(j));
    pat.push_back(PatternSlot::of(v));
    if (d - n - j > 0) pat.push_back(PatternSlot::any(d - n - j));
    CoordSpan span = pair_span(tw, level, pat);
    cert.checks.push_back({j, span.dim()});
    if (span.dim() != 0) cert.contained = false;
  }
  return cert;
}

nlohmann::ordered_json NilCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["element"] = element;
  j["exponent"] = exponent;
  j["degree"] = degree;
  j["nilpotent_witness"] = nilpotent_witness;
  j["ideal"] = ideal.to_json();
  return j;
}

NilCertificate nil_check(const Tower& tw, const FreeVector& element,
                         uint64_t exponent) {
  if (exponent < 1) {
    throw std::invalid_argument("nil check requires exponent >= 1");
  }
  NilCertificate cert;
  cert.element = element.str();
  cert.exponent = exponent;
  FreeVector power = element;
  for (uint64_t i = 1; i < exponent; ++i) {
    power = power.mul(element, tw.field());
    if (power.support_size() > 100000) {
      throw capacity_error("power support exceeds 100000 terms",
                           power.degree());
    }
  }
  cert.degree = power.degree();
  cert.ideal = ideal_contains(tw, power);
  cert.nilpotent_witness = cert.ideal.contained;
  return cert;
}

std::vector<HilbertRow> hilbert_table(const Tower& tw, int64_t n_max,
                                      const AlphaSpec& alpha) {
  if (n_max < 0) throw std::invalid_argument("hilbert table requires n >= 0");
  if (n_max > 7) {
    throw capacity_error("the exact column of the hilbert table is dense; "
                         "n_max <= 7", int(n_max));
  }
  std::vector<size_t> lcount{1};  // |L'(0)| = |R'(0)| = 1 (the empty word)
  std::vector<size_t> rcount{1};
  for (int64_t j = 1; j <= n_max; ++j) {
    BoundarySpaces b = boundary_spaces(tw, j);
    lcount.push_back(b.left.complement.size());
    rcount.push_back(b.right.complement.size());
  }
  std::vector<HilbertRow> rows;
  rows.push_back({0, 1, 1, 1, true});
  for (int64_t n = 1; n <= n_max; ++n) {
    HilbertRow row;
    row.n = n;
    row.exact_dim = quotient_dim(tw, n);
    row.upper_bound = 0;
    for (int64_t j = 0; j <= n; ++j) {
      row.upper_bound += mpz_class(lcount[size_t(j)]) * rcount[size_t(n - j)];
    }
    Rational lb = alpha.lower_bound(n);
    if (lb.num < 0 || !mpz_class(lb.num).fits_ulong_p()) {
      throw std::invalid_argument("alpha exponent out of range for n^alpha");
    }
    mpz_class npow;
    mpz_class base = n;
    mpz_pow_ui(npow.get_mpz_t(), base.get_mpz_t(), lb.num.get_ui());
    mpz_root(row.n_pow_alpha.get_mpz_t(), npow.get_mpz_t(),
             lb.den.get_ui());
    row.within = mpz_class(row.exact_dim) <= row.upper_bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string hilbert_csv(const std::vector<HilbertRow>& rows) {
  std::string s = "n,exact_dim,upper_bound,n_pow_alpha,within_bound\n";
  for (const HilbertRow& r : rows) {
    s += std::to_string(r.n) + "," + std::to_string(r.exact_dim) + "," +
         r.upper_bound.get_str() + "," + r.n_pow_alpha.get_str() + "," +
         (r.within ? "1" : "0") + "\n";
  }
  return s;
}

bool GrowthReport::pass() const {
  for (const GrowthRow& r : rows) {
    if (!r.within) return false;
  }
  return !rows.empty();
}

nlohmann::ordered_json GrowthReport::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "nilgrowth-growth-v1";
  j["pass"] = pass();
  j["rows"] = nlohmann::ordered_json::array();
  for (const GrowthRow& r : rows) {
    j["rows"].push_back({{"level", r.level},
                         {"chain_dim", r.chain_dim.get_str()},
                         {"bound", r.bound.get_str()},
                         {"within", r.within}});
  }
  return j;
}

GrowthReport growth_check(const Tower& tw, int64_t level_max) {
  if (level_max < 1 || level_max > tw.max_level()) {
    throw std::invalid_argument(
        "growth check covers levels 1 .. max_level of the tower");
  }
  GrowthReport report;
  mpz_class chain = tw.dim_v(0);
  for (int64_t n = 1; n <= level_max; ++n) {
    chain *= mpz_class(uint64_t(tw.dim_v(int(n))));
    mpz_class exponent = 2 * n;
    const auto& f = tw.params().f;
    const auto& g = tw.params().g;
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i] - g[i] - 1 <= n) {
        if (g[i] > 62) {
          throw capacity_error("growth bound exponent out of range",
                               int(g[i]));
        }
        exponent += pow2(static_cast<unsigned long>(g[i] + 1));
      }
    }
    if (!exponent.fits_ulong_p()) {
      throw capacity_error("growth bound exponent out of range", int(n));
    }
    GrowthRow row;
    row.level = n;
    row.chain_dim = chain;
    row.bound = pow2(exponent.get_ui());
    row.within = row.chain_dim <= row.bound;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace nilgrowth
