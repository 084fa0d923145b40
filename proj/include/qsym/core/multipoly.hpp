#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsym/core/exponent.hpp"
#include "qsym/core/rational.hpp"

namespace qsym {

namespace detail {
template <class T>
bool coeff_zero(const T& c) {
  return is_zero(c);
}
}  // namespace detail

// Sparse multivariate polynomial over a coefficient ring K. Terms are kept in a map
// sorted by descending graded-lex order, so equal polynomials are structurally equal.
//
// K must provide K(long), +, -, *, unary -, == and a free is_zero(const K&).
template <class K>
class MultiPoly {
 public:
  using Coeff = K;
  using TermMap = std::map<Exponent, K, std::greater<Exponent>>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

  static MultiPoly constant(std::size_t nvars, const K& c) {
    MultiPoly p(nvars);
    if (!detail::coeff_zero(c)) p.terms_.emplace(Exponent{}, c);
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw std::out_of_range("variable index out of range");
    MultiPoly p(nvars);
    p.terms_.emplace(Exponent::unit(i), K(1));
    return p;
  }
  static MultiPoly monomial(std::size_t nvars, const Exponent& e, const K& c) {
    MultiPoly p(nvars);
    if (!detail::coeff_zero(c)) p.terms_.emplace(e, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero()); }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second == K(1); }
  bool is_monomial() const { return terms_.size() == 1; }

  K constant_term() const {
    auto it = terms_.find(Exponent{});
    return it == terms_.end() ? K(0) : it->second;
  }
  const Exponent& leading_exponent() const { return terms_.begin()->first; }
  const K& leading_coeff() const { return terms_.begin()->second; }

  K coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(const Exponent& e, const K& c) {
    if (detail::coeff_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_zero(it->second)) terms_.erase(it);
    }
  }

  // Increase the declared variable count (exponents beyond the old count are zero).
  void widen(std::size_t nvars) {
    check_nvars(nvars);
    nvars_ = std::max(nvars_, nvars);
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e.total);
    return d;
  }
  unsigned degree(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[var]);
    return d;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = terms_.begin()->first.total;
    for (const auto& [e, c] : terms_)
      if (e.total != d) return false;
    return true;
  }
  // Part of exact total degree d.
  MultiPoly homogeneous_part(unsigned d) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_)
      if (e.total == d) r.terms_.emplace_hint(r.terms_.end(), e, c);
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    widen(o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    widen(o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& operator*=(const K& s) {
    if (detail::coeff_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const K& s) { return a *= s; }
  friend MultiPoly operator*(const K& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(std::max(a.nvars_, b.nvars_));
    if (a.is_zero() || b.is_zero()) return r;
    if (b.is_constant()) return a * b.terms_.begin()->second;
    if (a.is_constant()) return b * a.terms_.begin()->second;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  MultiPoly pow(unsigned k) const {
    MultiPoly r = constant(nvars_, K(1));
    MultiPoly base = *this;
    while (k) {
      if (k & 1u) r *= base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  MultiPoly derivative(std::size_t var) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      unsigned k = e[var];
      if (k == 0) continue;
      Exponent f = e;
      f.dec(var);
      r.add_term(f, c * K(static_cast<long>(k)));
    }
    return r;
  }

  // Multiply by a monomial x^e.
  MultiPoly shifted(const Exponent& e) const {
    MultiPoly r(nvars_);
    for (const auto& [f, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), f + e, c);
    return r;
  }

  // Evaluate with values of type V, converting coefficients through conv.
  template <class V, class Conv>
  V evaluate(const std::vector<V>& values, Conv conv) const {
    if (values.size() < nvars_) throw std::invalid_argument("too few values for evaluation");
    V acc = V(0);
    std::vector<std::vector<V>> powers(nvars_);
    for (const auto& [e, c] : terms_) {
      V t = conv(c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        unsigned k = e[i];
        if (k == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(V(1));
        while (pw.size() <= k) pw.push_back(pw.back() * values[i]);
        t = t * pw[k];
      }
      acc = acc + t;
    }
    return acc;
  }
  K evaluate(const std::vector<K>& values) const {
    return evaluate<K>(values, [](const K& c) { return c; });
  }

  template <class K2, class F>
  MultiPoly<K2> map_coefficients(F f) const {
    MultiPoly<K2> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  // Drop terms whose coefficient satisfies pred.
  template <class Pred>
  void erase_if(Pred pred) {
    for (auto it = terms_.begin(); it != terms_.end();) it = pred(it->second) ? terms_.erase(it) : std::next(it);
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      bool unit = (c == K(1)) && !e.is_zero();
      if (!unit) {
        os << "(" << to_string(c) << ")";
      }
      bool star = !unit;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (star) os << "*";
        star = true;
        os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
        if (e[i] > 1) os << "^" << unsigned(e[i]);
      }
    }
    return os.str();
  }

  TermMap& mutable_terms() { return terms_; }

 private:
  static void check_nvars(std::size_t n) {
    if (n > kMaxVars) throw std::length_error("too many polynomial variables");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

template <class K>
bool is_zero(const MultiPoly<K>& p) {
  return p.is_zero();
}
template <class K>
std::string to_string(const MultiPoly<K>& p) {
  return p.str();
}

using PolyQ = MultiPoly<Rational>;

}  // namespace qsym
