#include "qsym/core/ratfunc.hpp"

#include <stdexcept>

namespace qsym {

namespace {

using Factor = RationalFunction::Factor;
using Dense = std::vector<Rational>;

PolyQ exact(const PolyQ& a, const PolyQ& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("expected exact polynomial division");
  return *q;
}

PolyQ monic(const PolyQ& p) { return p * p.leading_coeff().inverse(); }

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

// Coefficients in variable v after substituting values for the other variables.
Dense specialize(const PolyQ& p, std::size_t v, const std::vector<Rational>& values) {
  Dense out(p.degree(v) + 1);
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (i != v && e[i]) t *= values[i].pow(e[i]);
    out[e[v]] += t;
  }
  trim(out);
  return out;
}

// Degree of the univariate gcd over Q.
std::size_t univariate_gcd_degree(Dense a, Dense b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    Rational inv = b.back().inverse();
    for (auto& c : b) c *= inv;
    while (a.size() >= b.size()) {
      Rational lead = a.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= lead * b[k];
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Proves gcd(num, base) = 1 through one variable in which base has a constant leading
// coefficient: a common factor would survive specialization of the other variables.
bool certified_coprime(const PolyQ& num, const PolyQ& base) {
  const std::size_t nv = std::max(num.nvars(), base.nvars());
  for (std::size_t v = 0; v < nv; ++v) {
    unsigned d = base.degree(v);
    if (d == 0) continue;
    bool const_lead = true;
    for (const auto& [e, c] : base.terms())
      if (e[v] == d && e.total != d) const_lead = false;
    if (!const_lead) continue;
    for (long attempt = 0; attempt < 3; ++attempt) {
      std::vector<Rational> values(nv);
      for (std::size_t i = 0; i < nv; ++i) values[i] = Rational(static_cast<long>(3 + 7 * i + 13 * attempt) % 29 + 2);
      Dense a = specialize(num, v, values);
      if (a.empty()) continue;
      return univariate_gcd_degree(std::move(a), specialize(base, v, values)) == 0;
    }
  }
  return false;
}

// Largest common divisor of num and base, monic; 1 when coprime.
PolyQ common_factor(const PolyQ& num, const PolyQ& base) {
  if (base.total_degree() == 1) return PolyQ::constant(base.nvars(), Rational(1));
  if (certified_coprime(num, base)) return PolyQ::constant(base.nvars(), Rational(1));
  return monic(poly_gcd(num, base));
}

void merge_into(std::vector<Factor>& fs, const PolyQ& base, unsigned exp) {
  if (exp == 0) return;
  for (auto& f : fs)
    if (f.base == base) {
      f.exp += exp;
      return;
    }
  fs.push_back({base, exp});
}

// Divides num by every factor it shares with the list; the list shrinks accordingly.
void cancel(PolyQ& num, std::vector<Factor>& fs) {
  if (num.is_zero()) {
    fs.clear();
    return;
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    while (fs[i].exp > 0) {
      if (auto q = divide_exact(num, fs[i].base)) {
        num = std::move(*q);
        --fs[i].exp;
        continue;
      }
      PolyQ g = common_factor(num, fs[i].base);
      if (g.is_constant()) break;
      num = exact(num, g);
      PolyQ rest = exact(fs[i].base, g);
      --fs[i].exp;
      fs.push_back({rest, 1});
    }
  }
  std::vector<Factor> kept;
  for (auto& f : fs)
    if (f.exp > 0 && !f.base.is_constant()) merge_into(kept, f.base, f.exp);
  fs = std::move(kept);
}

PolyQ expand(const std::vector<Factor>& fs, std::size_t nvars) {
  PolyQ d = PolyQ::constant(nvars, Rational(1));
  for (const auto& f : fs) d = d * f.base.pow(f.exp);
  return d;
}

}  // namespace

RationalFunction RationalFunction::build(PolyQ num, std::vector<Factor> factors) {
  cancel(num, factors);
  RationalFunction r;
  std::size_t nv = num.nvars();
  for (const auto& f : factors) nv = std::max(nv, f.base.nvars());
  r.den_ = expand(factors, nv);
  r.num_ = std::move(num);
  if (r.num_.is_zero()) r.num_ = PolyQ(nv);
  r.factors_ = std::move(factors);
  return r;
}

RationalFunction::RationalFunction(const PolyQ& num, const PolyQ& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  Rational lc = den.leading_coeff();
  if (den.is_constant()) {
    num_ = num * lc.inverse();
    den_ = PolyQ::constant(den.nvars(), Rational(1));
    return;
  }
  *this = build(num * lc.inverse(), {{monic(den), 1}});
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_term();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.factors_.empty() && b.factors_.empty()) return RationalFunction(a.num_ + b.num_);
  // common denominator: maximal exponent of each factor
  std::vector<Factor> common = a.factors_;
  for (const auto& f : b.factors_) {
    bool found = false;
    for (auto& g : common)
      if (g.base == f.base) {
        g.exp = std::max(g.exp, f.exp);
        found = true;
      }
    if (!found) common.push_back(f);
  }
  auto cofactor = [&](const std::vector<Factor>& own) {
    PolyQ m = PolyQ::constant(0, Rational(1));
    for (const auto& g : common) {
      unsigned have = 0;
      for (const auto& f : own)
        if (f.base == g.base) have = f.exp;
      if (g.exp > have) m = m * g.base.pow(g.exp - have);
    }
    return m;
  };
  PolyQ num = a.num_ * cofactor(a.factors_) + b.num_ * cofactor(b.factors_);
  return RationalFunction::build(std::move(num), std::move(common));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  if (a.factors_.empty() && b.factors_.empty()) return RationalFunction(a.num_ * b.num_);
  if (a.is_constant()) {
    RationalFunction r = b;
    r.num_ *= a.num_.constant_term();
    return r;
  }
  if (b.is_constant()) {
    RationalFunction r = a;
    r.num_ *= b.num_.constant_term();
    return r;
  }
  PolyQ an = a.num_, bn = b.num_;
  std::vector<Factor> af = a.factors_, bf = b.factors_;
  cancel(an, bf);
  cancel(bn, af);
  for (const auto& f : bf) merge_into(af, f.base, f.exp);
  RationalFunction r;
  std::size_t nv = std::max(a.nvars(), b.nvars());
  r.num_ = an * bn;
  r.den_ = expand(af, nv);
  r.factors_ = std::move(af);
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  Rational lc = num_.leading_coeff();
  RationalFunction r;
  r.num_ = den_ * lc.inverse();
  if (num_.is_constant()) {
    r.den_ = PolyQ::constant(num_.nvars(), Rational(1));
    return r;
  }
  r.den_ = monic(num_);
  r.factors_ = {{r.den_, 1}};
  return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (factors_.empty()) return RationalFunction(num_.derivative(var));
  // (n / prod A^e)' = (n' prod A - n sum e A' prod_{other} A) / (prod A^e * prod A)
  const std::size_t nv = nvars();
  PolyQ all = PolyQ::constant(nv, Rational(1));
  for (const auto& f : factors_) all = all * f.base;
  PolyQ num = num_.derivative(var) * all;
  std::vector<Factor> fs = factors_;
  bool grows = false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    PolyQ d = factors_[i].base.derivative(var);
    if (d.is_zero()) continue;
    grows = true;
    PolyQ others = PolyQ::constant(nv, Rational(static_cast<long>(factors_[i].exp)));
    for (std::size_t j = 0; j < factors_.size(); ++j)
      if (j != i) others = others * factors_[j].base;
    num -= num_ * d * others;
  }
  if (!grows) {
    RationalFunction r = *this;
    r.num_ = num_.derivative(var);
    return r;
  }
  for (auto& f : fs) ++f.exp;
  return build(std::move(num), std::move(fs));
}

RationalFunction RationalFunction::pow(unsigned k) const {
  RationalFunction r;
  r.num_ = num_.pow(k);
  r.den_ = den_.pow(k);
  r.factors_ = factors_;
  for (auto& f : r.factors_) f.exp *= k;
  if (k == 0) r.factors_.clear();
  return r;
}

Rational RationalFunction::evaluate(const std::vector<Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d.is_zero()) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

std::string RationalFunction::str(const std::vector<std::string>& names) const {
  if (den_.is_one()) return num_.str(names);
  return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
}

}  // namespace qsym
