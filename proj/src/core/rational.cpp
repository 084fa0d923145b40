#include "qsym/core/rational.hpp"

#include <stdexcept>

namespace qsym {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string t) {
    std::size_t b = t.find_first_not_of(" \t");
    std::size_t e = t.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  s = strip(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  std::size_t slash = s.find('/');
  Integer num, den(1);
  auto read_int = [](const std::string& t, Integer& out) {
    if (t.empty()) throw std::invalid_argument("malformed rational literal");
    std::size_t start = (t[0] == '-') ? 1 : 0;
    if (start == t.size()) throw std::invalid_argument("malformed rational literal");
    for (std::size_t i = start; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("malformed rational literal: " + t);
    out.set_str(t, 10);
  };
  if (slash == std::string::npos) {
    read_int(s, num);
  } else {
    read_int(strip(s.substr(0, slash)), num);
    read_int(strip(s.substr(slash + 1)), den);
  }
  return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  return Rational(mpq_class(n, d));
}

std::size_t Rational::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](const mpz_class& z) {
    std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i));
      h *= 1099511628211ull;
    }
    h ^= static_cast<std::size_t>(sgn(z) + 2);
    h *= 1099511628211ull;
  };
  mix(v_.get_num());
  mix(v_.get_den());
  return h;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace qsym
