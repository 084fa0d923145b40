#pragma once

#include <string>
#include <vector>

#include "qsym/core/ratfunc.hpp"

namespace qsym {

// Element a + b*r of Q(x_1..x_n)[r] / (r^2 - |x|^2). For n >= 2 the pair (a, b) is unique.
// Elements with b = 0 may leave the dimension unset (0); it is fixed by the first
// element that carries r.
class RadicalElement {
 public:
  RadicalElement() = default;
  RadicalElement(long c) : a_(c) {}  // NOLINT(google-explicit-constructor)
  RadicalElement(const Rational& c) : a_(c) {}  // NOLINT(google-explicit-constructor)
  RadicalElement(const RationalFunction& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  RadicalElement(const PolyQ& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  RadicalElement(std::size_t n, RationalFunction a, RationalFunction b);

  // r = |x| in n variables.
  static RadicalElement radius(std::size_t n);
  static RadicalElement coordinate(std::size_t n, std::size_t i);
  static PolyQ radius_squared(std::size_t n);

  std::size_t dim() const { return n_; }
  const RationalFunction& rational_part() const { return a_; }
  const RationalFunction& radical_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  bool is_polynomial() const { return b_.is_zero() && a_.is_polynomial(); }

  RadicalElement operator-() const { return RadicalElement(n_, -a_, -b_); }
  RadicalElement& operator+=(const RadicalElement& o);
  RadicalElement& operator-=(const RadicalElement& o);
  RadicalElement& operator*=(const RadicalElement& o) { return *this = *this * o; }
  friend RadicalElement operator+(RadicalElement a, const RadicalElement& b) { return a += b; }
  friend RadicalElement operator-(RadicalElement a, const RadicalElement& b) { return a -= b; }
  friend RadicalElement operator*(const RadicalElement& a, const RadicalElement& b);
  friend RadicalElement operator/(const RadicalElement& a, const RadicalElement& b) { return a * b.inverse(); }
  friend bool operator==(const RadicalElement& a, const RadicalElement& b) {
    return a.a_ == b.a_ && a.b_ == b.b_;
  }

  RadicalElement inverse() const;
  RadicalElement derivative(std::size_t var) const;

  // Value at x with the supplied rational radius; |x| = radius must hold.
  Rational evaluate(const std::vector<Rational>& x, const Rational& radius) const;
  double evaluate(const std::vector<double>& x) const;

  std::string str() const;

 private:
  std::size_t n_ = 0;
  RationalFunction a_;
  RationalFunction b_;
};

inline bool is_zero(const RadicalElement& r) { return r.is_zero(); }
inline std::string to_string(const RadicalElement& r) { return r.str(); }

}  // namespace qsym
