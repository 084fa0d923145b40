#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "qsym/poisson/phase_poly.hpp"
#include "qsym/report/report.hpp"

namespace qsym::weyl {

using poisson::PhasePoly;

// Differential operator sum_a c_a(x, r) dp^a with every coefficient to the left of the
// derivatives. p_i acts as d/dx_i, so [p_i, x_j] = delta_ij. The normal-ordered symbol is
// stored as a PhasePoly.
class WeylOperator {
 public:
  WeylOperator() = default;
  explicit WeylOperator(std::size_t n) : symbol_(n) {}
  // Operator whose normal-ordered symbol is f (coefficients left, p right).
  static WeylOperator from_normal_symbol(PhasePoly f) {
    WeylOperator w;
    w.symbol_ = std::move(f);
    return w;
  }
  static WeylOperator identity(std::size_t n) { return constant(n, Rational(1)); }
  static WeylOperator constant(std::size_t n, const Rational& c) {
    return from_normal_symbol(PhasePoly::constant(n, c));
  }
  static WeylOperator multiplication(std::size_t n, const RadicalElement& c) {
    return from_normal_symbol(PhasePoly(n, c));
  }
  static WeylOperator x(std::size_t n, std::size_t i) { return from_normal_symbol(PhasePoly::x(n, i)); }
  static WeylOperator p(std::size_t n, std::size_t i) { return from_normal_symbol(PhasePoly::p(n, i)); }

  std::size_t n() const { return symbol_.n(); }
  const PhasePoly& normal_symbol() const { return symbol_; }
  bool is_zero() const { return symbol_.is_zero(); }
  unsigned order() const { return symbol_.p_degree(); }
  // Top-order part of the normal symbol.
  PhasePoly principal_symbol() const { return symbol_.p_homogeneous_part(order()); }

  WeylOperator operator-() const { return from_normal_symbol(-symbol_); }
  WeylOperator& operator+=(const WeylOperator& o) {
    symbol_ += o.symbol_;
    return *this;
  }
  WeylOperator& operator-=(const WeylOperator& o) {
    symbol_ -= o.symbol_;
    return *this;
  }
  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
  friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);
  friend WeylOperator operator*(const Rational& s, const WeylOperator& a) {
    return from_normal_symbol(RadicalElement(s) * a.symbol_);
  }
  friend bool operator==(const WeylOperator& a, const WeylOperator& b) { return a.symbol_ == b.symbol_; }

  std::string str() const;

 private:
  PhasePoly symbol_;
};

inline bool is_zero(const WeylOperator& w) { return w.is_zero(); }
inline std::string to_string(const WeylOperator& w) { return w.str(); }

WeylOperator compose(const WeylOperator& a, const WeylOperator& b);
WeylOperator commutator(const WeylOperator& a, const WeylOperator& b);
// (ab + ba) / 2
WeylOperator diamond(const WeylOperator& a, const WeylOperator& b);

// Weyl-symmetric quantization: each monomial goes to the average over all orderings of its
// factors, i.e. normal symbol = exp(1/2 sum_i d/dx_i d/dp_i) f.
WeylOperator symmetrize(const PhasePoly& f);
// Quantization of a function at most linear in p; throws std::invalid_argument otherwise.
WeylOperator standard_quantize(const PhasePoly& f);

WeylOperator momentum_op(std::size_t n, std::size_t i, std::size_t j);
WeylOperator laplacian(std::size_t n);       // p^2
WeylOperator radius_squared_op(std::size_t n);  // r^2
WeylOperator x_dot_p_op(std::size_t n);
// sum of P_ij o P_ij over pairs inside the subset
WeylOperator p_squared_op(std::size_t n, const std::vector<std::size_t>& subset);
WeylOperator p_squared_op(std::size_t n);
// p^2 / 2 - alpha / r
WeylOperator kepler_hamiltonian_op(std::size_t n, const Rational& alpha);
// sum_j P_ij <> p_j - alpha x_i / r
WeylOperator runge_lenz_op(std::size_t n, std::size_t i, const Rational& alpha);

struct QuantumCentralConfig {
  std::size_t n = 3;
  Rational alpha = Rational(1);
  std::size_t max_tree_depth = 3;
  std::size_t samples = 2;
  std::uint64_t seed = 1;
};

report::VerificationReport quantum_central_force_suite(const QuantumCentralConfig& cfg);

}  // namespace qsym::weyl
