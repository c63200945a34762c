#include "nilgrowth/free_vector.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nilgrowth {

FreeVector FreeVector::make(int degree, std::vector<Term> terms, const FieldSpec& f) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  FreeVector v(degree);
  for (auto& [w, c] : terms) {
    if (w.length() != degree)
      throw std::invalid_argument("FreeVector::make: word degree mismatch");
    uint32_t cc = c % f.p();
    if (cc == 0) continue;
    if (!v.terms_.empty() && v.terms_.back().first == w) {
      uint32_t s = f.add(v.terms_.back().second, cc);
      if (s == 0) {
        v.terms_.pop_back();
      } else {
        v.terms_.back().second = s;
      }
    } else {
      v.terms_.emplace_back(w, cc);
    }
  }
  return v;
}

uint32_t FreeVector::coeff(const Word& w) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), w,
      [](const Term& t, const Word& key) { return t.first < key; });
  if (it != terms_.end() && it->first == w) return it->second;
  return 0;
}

FreeVector FreeVector::add(const FreeVector& o, const FieldSpec& f) const {
  if (degree_ != o.degree_)
    throw std::invalid_argument("FreeVector::add: degree mismatch");
  FreeVector r(degree_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      uint32_t s = f.add(terms_[i].second, o.terms_[j].second);
      if (s) r.terms_.emplace_back(terms_[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

FreeVector FreeVector::sub(const FreeVector& o, const FieldSpec& f) const {
  return add(o.scale(f.neg(1), f), f);
}

FreeVector FreeVector::scale(uint32_t c, const FieldSpec& f) const {
  c %= f.p();
  FreeVector r(degree_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [w, a] : terms_) r.terms_.emplace_back(w, f.mul(a, c));
  return r;
}

FreeVector FreeVector::mul(const FreeVector& o, const FieldSpec& f) const {
  std::map<Word, uint32_t> acc;
  for (const auto& [u, a] : terms_) {
    for (const auto& [v, b] : o.terms_) {
      Word w = u.concat(v);
      uint32_t& slot = acc[w];
      slot = f.add(slot, f.mul(a, b));
    }
  }
  FreeVector r(degree_ + o.degree_);
  for (const auto& [w, c] : acc) {
    if (c) r.terms_.emplace_back(w, c);
  }
  return r;
}

std::string FreeVector::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    if (c != 1) {
      s += std::to_string(c);
      s += "*";
    }
    s += w.length() == 0 ? "1" : w.str();
  }
  return s;
}

FreeVector FreeVector::parse(std::string_view s, const FieldSpec& f,
                             int expected_degree) {
  std::vector<Term> terms;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  bool neg = false;
  bool any = false;
  skip_ws();
  while (i < s.size()) {
    // coefficient
    uint64_t c = 1;
    bool saw_digits = false;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      if (!saw_digits) c = 0;  // implicit coefficient 1 only when no digits follow
      c = c * 10 + (s[i] - '0');
      if (c > (uint64_t(1) << 62)) throw std::invalid_argument("coefficient too large");
      ++i;
      saw_digits = true;
    }
    skip_ws();
    if (saw_digits && i < s.size() && s[i] == '*') {
      ++i;
      skip_ws();
    }
    // word
    std::string w;
    while (i < s.size() && (s[i] == 'x' || s[i] == 'y')) w.push_back(s[i++]);
    if (w.empty() && !saw_digits)
      throw std::invalid_argument("cannot parse vector term in: " + std::string(s));
    Word word = w.empty() ? Word() : Word::parse(w);
    // "0" alone (or any bare number) is a scalar multiple of the empty word
    uint32_t cc = f.reduce_int(int64_t(c % f.p()));
    if (neg) cc = f.neg(cc);
    if (w.empty() && saw_digits && c == 0) {
      // explicit zero term: contributes nothing, any degree
    } else {
      terms.emplace_back(word, cc);
    }
    any = true;
    skip_ws();
    if (i == s.size()) break;
    if (s[i] == '+') {
      neg = false;
    } else if (s[i] == '-') {
      neg = true;
    } else {
      throw std::invalid_argument("expected + or - in vector: " + std::string(s));
    }
    ++i;
    skip_ws();
  }
  if (!any) throw std::invalid_argument("empty vector expression");
  int degree = expected_degree;
  if (degree < 0) degree = terms.empty() ? 0 : terms.front().first.length();
  return make(degree, std::move(terms), f);
}

}  // namespace nilgrowth
