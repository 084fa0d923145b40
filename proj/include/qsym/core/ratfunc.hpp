#pragma once

#include <string>
#include <vector>

#include "qsym/core/multipoly.hpp"
#include "qsym/core/poly_gcd.hpp"

namespace qsym {

// Element of Q(x_1..x_n): numerator over a monic denominator with gcd 1. The denominator
// is also kept as a product of monic factors so that cancellation works factor by factor.
class RationalFunction {
 public:
  struct Factor {
    PolyQ base;
    unsigned exp = 0;
  };

  RationalFunction() : num_(0), den_(PolyQ::constant(0, Rational(1))) {}
  RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c)  // NOLINT(google-explicit-constructor)
      : num_(PolyQ::constant(0, c)), den_(PolyQ::constant(0, Rational(1))) {}
  RationalFunction(const PolyQ& p)  // NOLINT(google-explicit-constructor)
      : num_(p), den_(PolyQ::constant(p.nvars(), Rational(1))) {}
  RationalFunction(const PolyQ& num, const PolyQ& den);

  static RationalFunction variable(std::size_t nvars, std::size_t i) {
    return RationalFunction(PolyQ::variable(nvars, i));
  }

  const PolyQ& num() const { return num_; }
  const PolyQ& den() const { return den_; }
  const std::vector<Factor>& den_factors() const { return factors_; }
  std::size_t nvars() const { return std::max(num_.nvars(), den_.nvars()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Rational constant_value() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction inverse() const;
  RationalFunction derivative(std::size_t var) const;
  RationalFunction pow(unsigned k) const;

  // Value at a rational point; throws std::domain_error when the denominator vanishes.
  Rational evaluate(const std::vector<Rational>& point) const;
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  // num over prod factors; cancels common factors and expands the denominator.
  static RationalFunction build(PolyQ num, std::vector<Factor> factors);
  static RationalFunction polynomial(PolyQ num) { return RationalFunction(std::move(num)); }

  PolyQ num_;
  PolyQ den_;
  std::vector<Factor> factors_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }
inline std::string to_string(const RationalFunction& f) { return f.str(); }

}  // namespace qsym
