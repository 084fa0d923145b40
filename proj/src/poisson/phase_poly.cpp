#include "qsym/poisson/phase_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace qsym::poisson {

PhasePoint sample_phase_point(std::size_t n, Sampler& sampler, long bound) {
  // x = rho (2t, |t|^2 - 1) / (|t|^2 + 1) has |x| = rho.
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    std::vector<Rational> t = sampler.rationals(n - 1, bound);
    Rational t2;
    for (const auto& v : t) t2 += v * v;
    Rational rho = sampler.positive_rational(bound);
    Rational denom = t2 + Rational(1);
    PhasePoint pt;
    pt.r = rho;
    for (const auto& v : t) pt.x.push_back(rho * Rational(2) * v / denom);
    pt.x.push_back(rho * (t2 - Rational(1)) / denom);
    bool nonzero = false;
    for (const auto& v : pt.x) nonzero = nonzero || !v.is_zero();
    if (!nonzero) continue;
    pt.p = sampler.rationals(n, bound);
    return pt;
  }
  throw std::runtime_error("could not sample a nondegenerate phase point");
}

PhasePoly::PhasePoly(std::size_t n, const RadicalElement& c) : n_(n) {
  if (!c.is_zero()) terms_.emplace(Exponent{}, c);
}

PhasePoly PhasePoly::x(std::size_t n, std::size_t i) { return PhasePoly(n, RadicalElement::coordinate(n, i)); }

PhasePoly PhasePoly::p(std::size_t n, std::size_t i) {
  PhasePoly r(n);
  r.terms_.emplace(Exponent::unit(i), RadicalElement(1L));
  return r;
}

PhasePoly PhasePoly::radius(std::size_t n) { return PhasePoly(n, RadicalElement::radius(n)); }

PhasePoly PhasePoly::monomial(std::size_t n, const Exponent& pexp, const RadicalElement& c) {
  PhasePoly r(n);
  r.add_term(pexp, c);
  return r;
}

unsigned PhasePoly::p_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e.total);
  return d;
}

PhasePoly PhasePoly::p_homogeneous_part(unsigned d) const {
  PhasePoly r(n_);
  for (const auto& [e, c] : terms_)
    if (e.total == d) r.terms_.emplace(e, c);
  return r;
}

void PhasePoly::add_term(const Exponent& pexp, const RadicalElement& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(pexp, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhasePoly PhasePoly::operator-() const {
  PhasePoly r(n_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  PhasePoly r(std::max(a.n_, b.n_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

PhasePoly operator*(const RadicalElement& s, const PhasePoly& a) {
  PhasePoly r(a.n_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
  return r;
}

PhasePoly PhasePoly::derivative_x(std::size_t i) const {
  PhasePoly r(n_);
  for (const auto& [e, c] : terms_) r.add_term(e, c.derivative(i));
  return r;
}

PhasePoly PhasePoly::derivative_p(std::size_t i) const {
  PhasePoly r(n_);
  for (const auto& [e, c] : terms_) {
    unsigned k = e[i];
    if (k == 0) continue;
    Exponent f = e;
    f.dec(i);
    r.add_term(f, RadicalElement(static_cast<long>(k)) * c);
  }
  return r;
}

Rational PhasePoly::evaluate(const PhasePoint& pt) const {
  Rational acc;
  for (const auto& [e, c] : terms_) {
    Rational t = c.evaluate(pt.x, pt.r);
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i]) t *= pt.p[i].pow(e[i]);
    acc += t;
  }
  return acc;
}

std::vector<Rational> PhasePoly::gradient(const PhasePoint& pt) const {
  std::vector<Rational> g;
  g.reserve(2 * n_);
  for (std::size_t i = 0; i < n_; ++i) g.push_back(derivative_x(i).evaluate(pt));
  for (std::size_t i = 0; i < n_; ++i) g.push_back(derivative_p(i).evaluate(pt));
  return g;
}

std::string PhasePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::size_t i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      os << "*p" << (i + 1);
      if (e[i] > 1) os << "^" << unsigned(e[i]);
    }
  }
  return os.str();
}

PhasePoly canonical_bracket(const PhasePoly& f, const PhasePoly& g) {
  const std::size_t n = std::max(f.n(), g.n());
  PhasePoly r(n);
  for (std::size_t i = 0; i < n; ++i) {
    PhasePoly fp = f.derivative_p(i);
    if (!fp.is_zero()) {
      PhasePoly gx = g.derivative_x(i);
      if (!gx.is_zero()) r += fp * gx;
    }
    PhasePoly fx = f.derivative_x(i);
    if (!fx.is_zero()) {
      PhasePoly gp = g.derivative_p(i);
      if (!gp.is_zero()) r -= fx * gp;
    }
  }
  return r;
}

}  // namespace qsym::poisson
