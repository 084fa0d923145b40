#include "qsym/core/radical.hpp"

#include <cmath>
#include <stdexcept>

namespace qsym {

namespace {

std::size_t merge_dim(std::size_t a, std::size_t b) {
  if (a != 0 && b != 0 && a != b) throw std::invalid_argument("radical elements of different dimension");
  return a ? a : b;
}

}  // namespace

RadicalElement::RadicalElement(std::size_t n, RationalFunction a, RationalFunction b)
    : n_(n), a_(std::move(a)), b_(std::move(b)) {
  if (n_ == 0 && !b_.is_zero()) throw std::invalid_argument("radical part needs a dimension");
}

PolyQ RadicalElement::radius_squared(std::size_t n) {
  PolyQ s(n);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e;
    e.set(i, 2);
    s.add_term(e, Rational(1));
  }
  return s;
}

RadicalElement RadicalElement::radius(std::size_t n) {
  return RadicalElement(n, RationalFunction(), RationalFunction(PolyQ::constant(n, Rational(1))));
}

RadicalElement RadicalElement::coordinate(std::size_t n, std::size_t i) {
  return RadicalElement(n, RationalFunction::variable(n, i), RationalFunction());
}

RadicalElement& RadicalElement::operator+=(const RadicalElement& o) {
  n_ = merge_dim(n_, o.n_);
  a_ += o.a_;
  if (!o.b_.is_zero()) b_ += o.b_;
  return *this;
}

RadicalElement& RadicalElement::operator-=(const RadicalElement& o) {
  n_ = merge_dim(n_, o.n_);
  a_ -= o.a_;
  if (!o.b_.is_zero()) b_ -= o.b_;
  return *this;
}

RadicalElement operator*(const RadicalElement& x, const RadicalElement& y) {
  std::size_t n = merge_dim(x.n_, y.n_);
  if (x.b_.is_zero() && y.b_.is_zero()) return RadicalElement(n, x.a_ * y.a_, RationalFunction());
  if (x.b_.is_zero()) return RadicalElement(n, x.a_ * y.a_, x.a_ * y.b_);
  if (y.b_.is_zero()) return RadicalElement(n, x.a_ * y.a_, x.b_ * y.a_);
  RationalFunction rr(RadicalElement::radius_squared(n));
  return RadicalElement(n, x.a_ * y.a_ + x.b_ * y.b_ * rr, x.a_ * y.b_ + x.b_ * y.a_);
}

RadicalElement RadicalElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero radical element");
  if (b_.is_zero()) return RadicalElement(n_, a_.inverse(), RationalFunction());
  // (a - b r) / (a^2 - b^2 |x|^2)
  RationalFunction norm = a_ * a_ - b_ * b_ * RationalFunction(radius_squared(n_));
  RationalFunction inv = norm.inverse();
  return RadicalElement(n_, a_ * inv, -(b_ * inv));
}

RadicalElement RadicalElement::derivative(std::size_t var) const {
  if (b_.is_zero()) return RadicalElement(n_, a_.derivative(var), RationalFunction());
  // d r / d x_i = x_i r / |x|^2
  RationalFunction xi_over = RationalFunction(PolyQ::variable(n_, var), radius_squared(n_));
  return RadicalElement(n_, a_.derivative(var), b_.derivative(var) + b_ * xi_over);
}

Rational RadicalElement::evaluate(const std::vector<Rational>& x, const Rational& radius) const {
  Rational v = a_.evaluate(x);
  if (!b_.is_zero()) v += b_.evaluate(x) * radius;
  return v;
}

double RadicalElement::evaluate(const std::vector<double>& x) const {
  auto ev = [&x](const RationalFunction& f) {
    auto conv = [](const Rational& c) { return c.to_double(); };
    return f.num().evaluate<double>(x, conv) / f.den().evaluate<double>(x, conv);
  };
  double v = ev(a_);
  if (!b_.is_zero()) {
    double r2 = 0;
    for (double xi : x) r2 += xi * xi;
    v += ev(b_) * std::sqrt(r2);
  }
  return v;
}

std::string RadicalElement::str() const {
  if (b_.is_zero()) return a_.str();
  std::string s = "(" + b_.str() + ")*r";
  if (a_.is_zero()) return s;
  return a_.str() + " + " + s;
}

}  // namespace qsym
