#include "nilgrowth/power_relations.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nilgrowth {

namespace {

int64_t max_length(const std::vector<Word>& gens) {
  if (gens.empty()) {
    throw std::invalid_argument("power relations: empty generator set");
  }
  int64_t deg = 0;
  for (const Word& w : gens) {
    if (w.length() == 0) {
      throw std::invalid_argument("power relations: empty word generator");
    }
    deg = std::max<int64_t>(deg, w.length());
  }
  return deg;
}

void exponent_rec(const std::vector<Word>& gens, size_t e, int64_t m_left,
                  int64_t len_left, std::vector<int64_t>& cur,
                  std::vector<std::vector<int64_t>>& out) {
  if (e + 1 == gens.size()) {
    int64_t len = gens[e].length();
    if (m_left * len == len_left) {
      cur.push_back(m_left);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  int64_t len = gens[e].length();
  for (int64_t i = 0; i <= m_left && i * len <= len_left; ++i) {
    cur.push_back(i);
    exponent_rec(gens, e + 1, m_left - i, len_left - i * len, cur, out);
    cur.pop_back();
  }
}

// Number of distinct arrangements m! / prod(i_e!), capped.
uint64_t arrangement_count(const std::vector<int64_t>& exponents,
                           uint64_t cap) {
  uint64_t m = 0;
  for (int64_t e : exponents) m += uint64_t(e);
  uint64_t count = 1;
  uint64_t placed = 0;
  for (int64_t e : exponents) {
    for (int64_t k = 1; k <= e; ++k) {
      ++placed;
      // count *= placed / k, exactly (binomial growth keeps it integral)
      unsigned __int128 next = (unsigned __int128)count * placed / uint64_t(k);
      if (next > cap) return cap + 1;
      count = uint64_t(next);
    }
  }
  (void)m;
  return count;
}

void arrangement_rec(const std::vector<Word>& gens, std::vector<int64_t>& left,
                     const Word& prefix, std::vector<FreeVector::Term>& out) {
  bool done = true;
  for (size_t e = 0; e < gens.size(); ++e) {
    if (left[e] > 0) {
      done = false;
      --left[e];
      arrangement_rec(gens, left, prefix.concat(gens[e]), out);
      ++left[e];
    }
  }
  if (done) out.emplace_back(prefix, 1);
}

}  // namespace

std::vector<std::vector<int64_t>> exponent_sequences(
    const std::vector<Word>& gens, int64_t m, int64_t target_len) {
  max_length(gens);  // validates
  std::vector<std::vector<int64_t>> out;
  if (m < 0 || target_len < 0) return out;
  std::vector<int64_t> cur;
  exponent_rec(gens, 0, m, target_len, cur, out);
  return out;
}

FreeVector multiset_coefficient(const std::vector<Word>& gens,
                                const std::vector<int64_t>& exponents,
                                const FieldSpec& f) {
  if (exponents.size() != gens.size()) {
    throw std::invalid_argument("multiset_coefficient: size mismatch");
  }
  int64_t degree = 0;
  for (size_t e = 0; e < gens.size(); ++e) {
    degree += exponents[e] * gens[e].length();
  }
  constexpr uint64_t kArrangementCap = 2'000'000;
  if (arrangement_count(exponents, kArrangementCap) > kArrangementCap) {
    throw capacity_error("multiset_coefficient: too many arrangements",
                         int(std::min<int64_t>(degree, 1 << 30)));
  }
  std::vector<FreeVector::Term> terms;
  std::vector<int64_t> left = exponents;
  arrangement_rec(gens, left, Word(), terms);
  return FreeVector::make(int(degree), std::move(terms), f);
}

uint32_t lambda_weight(const std::vector<uint32_t>& lambda,
                       const std::vector<int>& index_seq, const FieldSpec& f) {
  uint32_t w = 1;
  for (int i : index_seq) w = f.mul(w, lambda.at(size_t(i)));
  return w;
}

std::map<int64_t, FreeVector> mixed_power(const std::vector<Word>& gens,
                                          const std::vector<uint32_t>& lambda,
                                          int64_t m, const FieldSpec& f) {
  if (lambda.size() != gens.size()) {
    throw std::invalid_argument("mixed_power: size mismatch");
  }
  std::map<int64_t, FreeVector> cur;
  cur.emplace(0, FreeVector::unit(Word()));
  for (int64_t step = 0; step < m; ++step) {
    std::map<int64_t, FreeVector> next;
    for (const auto& [deg, vec] : cur) {
      for (size_t e = 0; e < gens.size(); ++e) {
        if (lambda[e] == 0) continue;
        FreeVector gen = FreeVector::unit(gens[e]).scale(lambda[e], f);
        FreeVector prod = vec.mul(gen, f);
        int64_t d = deg + gens[e].length();
        auto it = next.find(d);
        if (it == next.end()) {
          next.emplace(d, std::move(prod));
        } else {
          it->second = it->second.add(prod, f);
        }
      }
    }
    cur = std::move(next);
  }
  std::erase_if(cur, [](const auto& kv) { return kv.second.is_zero(); });
  return cur;
}

uint64_t power_relation_dim_bound(const std::vector<Word>& gens, int64_t n) {
  int64_t deg = max_length(gens);
  uint64_t bound = 2 * uint64_t(deg) * uint64_t(deg);
  for (int64_t i = 0; i < deg; ++i) bound *= 4;
  for (size_t e = 0; e < gens.size(); ++e) bound *= uint64_t(n + 1);
  return bound;
}

EchelonSubspace power_relation_space(const std::vector<Word>& gens, int64_t n,
                                     const FieldSpec& f, int dense_cap) {
  int64_t deg = max_length(gens);
  if (deg > 7) {
    throw capacity_error("power_relation_space: generator length too large",
                         int(deg));
  }
  if (n < 1 || n > (int64_t(1) << 20)) {
    throw std::invalid_argument("power_relation_space: bad degree");
  }
  EchelonSubspace y(f, int(n), dense_cap);
  for (int64_t m = 1; m <= n; ++m) {
    for (int64_t j = 0; j < 2 * deg; ++j) {
      auto seqs = exponent_sequences(gens, m, n - j);
      if (seqs.empty()) continue;
      const int64_t imax = std::min(std::max(j, deg - 1), j);
      for (const auto& seq : seqs) {
        FreeVector c = multiset_coefficient(gens, seq, f);
        if (c.is_zero()) continue;
        for (int64_t i = 0; i <= imax; ++i) {
          for (const Word& u : enumerate_words(int(i))) {
            for (const Word& v : enumerate_words(int(j - i))) {
              y.insert(FreeVector::unit(u).mul(c, f).mul(
                  FreeVector::unit(v), f));
            }
          }
        }
      }
    }
  }
  return y;
}

EchelonSubspace power_span(const EchelonSubspace& y, int64_t n, int64_t D) {
  const FieldSpec& f = y.field();
  if (n != y.degree()) {
    throw std::invalid_argument("power_span: block degree mismatch");
  }
  if (D > y.dense_cap() || D > 14) {
    throw capacity_error("power_span: degree past the dense cap", int(D));
  }
  EchelonSubspace out(f, int(D), y.dense_cap());
  for (int64_t k = 0; (k + 1) * n <= D; ++k) {
    EchelonSubspace left = EchelonSubspace::full_space(f, int(k * n));
    EchelonSubspace right =
        EchelonSubspace::full_space(f, int(D - (k + 1) * n));
    out = span_sum(out, span_product(span_product(left, y), right));
  }
  return out;
}

PowerSpanMembership::PowerSpanMembership(EchelonSubspace y, int64_t n)
    : y_(std::move(y)), n_(n) {
  if (n != y_.degree() || n < 1) {
    throw std::invalid_argument("PowerSpanMembership: block degree mismatch");
  }
  if (n > 20) {
    throw capacity_error("PowerSpanMembership: block degree too large",
                         int(n));
  }
  const auto& piv = y_.pivots();
  size_t pi = 0;
  for (const Word& w : enumerate_words(int(n), 20)) {
    while (pi < piv.size() && piv[pi] < w) ++pi;
    if (pi < piv.size() && piv[pi] == w) continue;
    coindex_.emplace(w, cowords_.size());
    cowords_.push_back(w);
  }
}

bool PowerSpanMembership::contains(const FreeVector& v) const {
  if (v.is_zero()) return true;
  const FieldSpec& f = y_.field();
  const int64_t D = v.degree();
  const int64_t q = D / n_;
  const int64_t r = D % n_;
  const size_t c = cowords_.size();
  {
    double bits = double(r);
    for (int64_t k = 0; k < q; ++k) bits += std::log2(double(c) + 1.0);
    if (bits > 62) {
      throw capacity_error("PowerSpanMembership: quotient too large", int(D));
    }
  }
  std::unordered_map<uint64_t, uint32_t> image;
  std::vector<FreeVector> block_residuals(static_cast<size_t>(q));
  for (const auto& [w, coeff] : v.terms()) {
    for (int64_t k = 0; k < q; ++k) {
      block_residuals[size_t(k)] =
          y_.residual(FreeVector::unit(w.subword(int(k * n_), int(n_))));
    }
    const uint64_t tail = r > 0 ? w.subword(int(q * n_), int(r)).index() : 0;
    // Accumulate the tensor of block residual coordinates, depth-first.
    struct Frame {
      uint64_t key;
      uint32_t scale;
    };
    std::vector<Frame> frontier{{0, coeff}};
    for (int64_t k = 0; k < q && !frontier.empty(); ++k) {
      std::vector<Frame> next;
      for (const Frame& fr : frontier) {
        for (const auto& [cw, cc] : block_residuals[size_t(k)].terms()) {
          next.push_back(Frame{fr.key * c + coindex_.at(cw),
                               f.mul(fr.scale, cc)});
        }
      }
      frontier = std::move(next);
    }
    for (const Frame& fr : frontier) {
      uint64_t key = (fr.key << r) | tail;
      uint32_t& slot = image[key];
      slot = f.add(slot, fr.scale);
    }
  }
  for (const auto& [key, val] : image) {
    (void)key;
    if (val != 0) return false;
  }
  return true;
}

PowerContainmentReport verify_power_containment(const std::vector<Word>& gens,
                                                int64_t n, const FieldSpec& f,
                                                uint64_t sample_count,
                                                uint64_t seed) {
  PowerContainmentReport rep;
  rep.gens = gens;
  rep.n = n;
  rep.p = f.p();
  rep.dim_bound = power_relation_dim_bound(gens, n);
  EchelonSubspace y = power_relation_space(gens, n, f);
  rep.dim_y = y.dim();
  PowerSpanMembership member(y, n);

  std::vector<std::vector<uint32_t>> sweeps;
  const size_t d = gens.size();
  if (sample_count == 0) {
    rep.exhaustive = true;
    uint64_t total = 1;
    for (size_t e = 0; e < d; ++e) {
      total *= f.p();
      if (total > 4096) {
        throw capacity_error("verify_power_containment: sweep too large",
                             int(n));
      }
    }
    for (uint64_t code = 0; code < total; ++code) {
      std::vector<uint32_t> lambda(d);
      uint64_t rest = code;
      for (size_t e = 0; e < d; ++e) {
        lambda[e] = uint32_t(rest % f.p());
        rest /= f.p();
      }
      sweeps.push_back(std::move(lambda));
    }
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (uint64_t s = 0; s < sample_count; ++s) {
      std::vector<uint32_t> lambda(d);
      for (size_t e = 0; e < d; ++e) {
        lambda[e] = uint32_t(rng() % f.p());
      }
      sweeps.push_back(std::move(lambda));
    }
  }
  rep.lambdas_checked = sweeps.size();

  std::vector<Word> lefts;
  for (int64_t l = 0; l < n; ++l) {
    for (const Word& a : enumerate_words(int(l))) lefts.push_back(a);
  }

  for (const auto& lambda : sweeps) {
    auto components = mixed_power(gens, lambda, 2 * n, f);
    for (const Word& a : lefts) {
      for (const auto& [deg, comp] : components) {
        FreeVector v = FreeVector::unit(a).mul(comp, f);
        ++rep.checks_run;
        if (!member.contains(v)) {
          rep.failures.push_back(
              PowerCheckFailure{lambda, a.str(), deg + a.length()});
        }
      }
    }
  }
  return rep;
}

}  // namespace nilgrowth
