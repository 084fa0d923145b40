#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qsym/core/radical.hpp"
#include "qsym/core/sampler.hpp"

namespace qsym::poisson {

// Point of T*R^n with rational x, p and rational |x|.
struct PhasePoint {
  std::vector<Rational> x;
  std::vector<Rational> p;
  Rational r;
};

// Random point with x on a sphere of rational radius (stereographic parametrization).
PhasePoint sample_phase_point(std::size_t n, Sampler& sampler, long bound = 1000);

// Polynomial in p_1..p_n whose coefficients are radical elements in x. Keys are
// p-exponents; terms are sorted by descending graded-lex order of the p-exponent.
class PhasePoly {
 public:
  using TermMap = std::map<Exponent, RadicalElement, std::greater<Exponent>>;

  PhasePoly() = default;
  explicit PhasePoly(std::size_t n) : n_(n) {}
  PhasePoly(std::size_t n, const RadicalElement& c);

  static PhasePoly x(std::size_t n, std::size_t i);
  static PhasePoly p(std::size_t n, std::size_t i);
  static PhasePoly radius(std::size_t n);
  static PhasePoly constant(std::size_t n, const Rational& c) { return PhasePoly(n, RadicalElement(c)); }
  static PhasePoly monomial(std::size_t n, const Exponent& pexp, const RadicalElement& c);

  std::size_t n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned p_degree() const;
  // Part of exact p-degree d.
  PhasePoly p_homogeneous_part(unsigned d) const;

  void add_term(const Exponent& pexp, const RadicalElement& c);

  PhasePoly operator-() const;
  PhasePoly& operator+=(const PhasePoly& o);
  PhasePoly& operator-=(const PhasePoly& o);
  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(const RadicalElement& s, const PhasePoly& a);
  friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.terms_ == b.terms_; }

  PhasePoly derivative_x(std::size_t i) const;
  PhasePoly derivative_p(std::size_t i) const;

  Rational evaluate(const PhasePoint& pt) const;
  // Gradient with respect to (x_1..x_n, p_1..p_n).
  std::vector<Rational> gradient(const PhasePoint& pt) const;

  std::string str() const;

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

inline bool is_zero(const PhasePoly& f) { return f.is_zero(); }
inline std::string to_string(const PhasePoly& f) { return f.str(); }

// {f,g} = sum_i (df/dp_i dg/dx_i - df/dx_i dg/dp_i), so {p_i, x_j} = delta_ij.
PhasePoly canonical_bracket(const PhasePoly& f, const PhasePoly& g);

}  // namespace qsym::poisson
