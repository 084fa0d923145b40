#include "qsym/core/poly_gcd.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace qsym {

namespace {

using Coeffs = std::vector<PolyQ>;  // dense coefficients in one variable, index = degree

PolyQ gcd_impl(const PolyQ& a, const PolyQ& b);

// Heuristic gcd over Z (evaluate one variable at a large integer, recurse, and read the
// gcd back from its balanced xi-adic digits). Inputs have integer coefficients; the result
// is the gcd over Z including the integer content. std::nullopt when it gives up.
Integer max_norm(const PolyQ& p) {
  Integer m = 0;
  for (const auto& [e, c] : p.terms()) {
    Integer a = abs(c.raw().get_num());
    if (a > m) m = a;
  }
  return m;
}

Integer integer_content(const PolyQ& p) {
  Integer g = 0;
  for (const auto& [e, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.raw().get_num_mpz_t());
  return g;
}

PolyQ evaluate_at(const PolyQ& p, std::size_t var, const Integer& xi, std::size_t nvars) {
  std::map<Exponent, Integer, std::greater<Exponent>> acc;
  std::vector<Integer> powers{Integer(1)};
  for (const auto& [e, c] : p.terms()) {
    unsigned k = e[var];
    while (powers.size() <= k) powers.push_back(powers.back() * xi);
    Exponent f = e;
    f.set(var, 0);
    acc[f] += c.raw().get_num() * powers[k];
  }
  PolyQ r(nvars);
  for (auto& [e, c] : acc)
    if (c != 0) r.add_term(e, Rational(c));
  return r;
}

PolyQ interpolate(const PolyQ& h, std::size_t var, const Integer& xi, std::size_t nvars) {
  PolyQ g(nvars);
  Integer half = xi / 2;
  for (const auto& [e, c] : h.terms()) {
    Integer v = c.raw().get_num();
    unsigned k = 0;
    while (v != 0) {
      Integer d;
      mpz_fdiv_r(d.get_mpz_t(), v.get_mpz_t(), xi.get_mpz_t());
      if (d > half) d -= xi;
      if (d != 0) {
        Exponent f = e;
        f.set(var, k);
        g.add_term(f, Rational(d));
      }
      v = (v - d) / xi;
      ++k;
    }
  }
  return g;
}

std::optional<PolyQ> heuristic_gcd(const PolyQ& a, const PolyQ& b, std::size_t nvars) {
  constexpr std::size_t kMaxBits = 1u << 18;
  Integer ca = integer_content(a), cb = integer_content(b), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.is_constant() || b.is_constant()) return PolyQ::constant(nvars, Rational(cg));
  PolyQ pa = a * Rational(Integer(1), ca), pb = b * Rational(Integer(1), cb);
  int var = -1;
  for (std::size_t v = 0; v < nvars; ++v)
    if (pa.degree(v) > 0 || pb.degree(v) > 0) var = static_cast<int>(v);
  const auto v = static_cast<std::size_t>(var);
  Integer na = max_norm(pa), nb = max_norm(pb);
  Integer xi = 2 * (na < nb ? na : nb) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) > kMaxBits) return std::nullopt;
    PolyQ ea = evaluate_at(pa, v, xi, nvars), eb = evaluate_at(pb, v, xi, nvars);
    if (!ea.is_zero() && !eb.is_zero()) {
      auto h = heuristic_gcd(ea, eb, nvars);
      if (!h) return std::nullopt;
      PolyQ g = interpolate(*h, v, xi, nvars);
      if (!g.is_zero()) {
        g = primitive_part(g);
        if (divide_exact(pa, g) && divide_exact(pb, g)) return g * Rational(cg);
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

int first_variable(const PolyQ& p, std::size_t nvars) {
  for (std::size_t v = 0; v < nvars; ++v)
    if (p.degree(v) > 0) return static_cast<int>(v);
  return -1;
}

Coeffs split(const PolyQ& p, std::size_t var, std::size_t nvars) {
  Coeffs out(p.degree(var) + 1, PolyQ(nvars));
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    unsigned k = e[var];
    f.set(var, 0);
    out[k].add_term(f, c);
  }
  return out;
}

PolyQ join(const Coeffs& cs, std::size_t var, std::size_t nvars) {
  PolyQ r(nvars);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    Exponent shift;
    shift.set(var, static_cast<unsigned>(k));
    for (const auto& [e, c] : cs[k].terms()) r.add_term(e + shift, c);
  }
  return r;
}

void trim(Coeffs& cs) {
  while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
}

PolyQ content_of(const Coeffs& cs) {
  PolyQ g;
  bool first = true;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    if (first) {
      g = primitive_part(c);
      first = false;
    } else {
      g = gcd_impl(g, c);
    }
    if (g.is_constant()) break;
  }
  return g;
}

void divide_all(Coeffs& cs, const PolyQ& d) {
  if (d.is_one()) return;
  for (auto& c : cs) {
    if (c.is_zero()) continue;
    auto q = divide_exact(c, d);
    if (!q) throw std::logic_error("content division was not exact");
    c = std::move(*q);
  }
}

void scale_numeric(Coeffs& cs) {
  Rational cont;
  bool first = true;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    Rational k = numeric_content(c);
    if (first) {
      cont = k;
      first = false;
    } else {
      Integer n, d;
      mpz_gcd(n.get_mpz_t(), cont.num().get_mpz_t(), k.num().get_mpz_t());
      mpz_lcm(d.get_mpz_t(), cont.den().get_mpz_t(), k.den().get_mpz_t());
      cont = Rational(n, d);
    }
  }
  if (first || cont.is_one()) return;
  Rational inv = cont.inverse();
  for (auto& c : cs) c *= inv;
}

// Pseudo-remainder of a by b in the split variable. Both are trimmed and deg a >= deg b.
Coeffs pseudo_remainder(Coeffs a, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  const PolyQ& lcb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    PolyQ lca = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lcb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= lca * b[k];
    trim(a);
    scale_numeric(a);
  }
  return a;
}

PolyQ gcd_impl(const PolyQ& a, const PolyQ& b) {
  const std::size_t nvars = std::max(a.nvars(), b.nvars());
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_constant() || b.is_constant()) return PolyQ::constant(nvars, Rational(1));

  // Monomial shortcut: the gcd is the common monomial factor.
  if (a.is_monomial() || b.is_monomial()) {
    const PolyQ& m = a.is_monomial() ? a : b;
    const PolyQ& o = a.is_monomial() ? b : a;
    Exponent g = m.leading_exponent();
    for (const auto& [e, c] : o.terms())
      for (std::size_t i = 0; i < nvars; ++i)
        if (e[i] < g[i]) g.set(i, e[i]);
    return PolyQ::monomial(nvars, g, Rational(1));
  }

  PolyQ pa = primitive_part(a);
  PolyQ pb = primitive_part(b);
  if (pa == pb) return pa;
  if (auto h = heuristic_gcd(pa, pb, nvars)) return primitive_part(*h);

  int va = first_variable(pa, nvars);
  int vb = first_variable(pb, nvars);
  int v = std::min(va, vb);
  if (v < 0) v = std::max(va, vb);
  const auto var = static_cast<std::size_t>(v);

  if (pa.degree(var) == 0) return gcd_impl(pa, content_of(split(pb, var, nvars)));
  if (pb.degree(var) == 0) return gcd_impl(content_of(split(pa, var, nvars)), pb);

  Coeffs ca = split(pa, var, nvars);
  Coeffs cb = split(pb, var, nvars);
  PolyQ conta = content_of(ca);
  PolyQ contb = content_of(cb);
  divide_all(ca, conta);
  divide_all(cb, contb);
  PolyQ gc = gcd_impl(conta, contb);

  if (ca.size() < cb.size()) std::swap(ca, cb);
  while (true) {
    Coeffs r = pseudo_remainder(ca, cb);
    if (r.empty()) break;
    if (r.size() == 1) {
      cb = Coeffs{PolyQ::constant(nvars, Rational(1))};
      break;
    }
    divide_all(r, content_of(r));
    ca = std::move(cb);
    cb = std::move(r);
  }
  divide_all(cb, content_of(cb));
  return primitive_part(gc * join(cb, var, nvars));
}

}  // namespace

Rational numeric_content(const PolyQ& p) {
  if (p.is_zero()) return Rational(1);
  Integer n, d(1);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const mpq_class& q = c.raw();
    if (first) {
      n = abs(q.get_num());
      d = q.get_den();
      first = false;
    } else {
      mpz_gcd(n.get_mpz_t(), n.get_mpz_t(), q.get_num_mpz_t());
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
    }
  }
  return Rational(n, d);
}

PolyQ primitive_part(const PolyQ& p) {
  if (p.is_zero()) return p;
  Rational c = numeric_content(p);
  if (p.leading_coeff().sign() < 0) c = -c;
  if (c.is_one()) return p;
  return p * c.inverse();
}

std::optional<PolyQ> divide_exact(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const std::size_t nvars = std::max(a.nvars(), b.nvars());
  if (b.is_constant()) return a * b.leading_coeff().inverse();
  PolyQ q(nvars);
  PolyQ r = a;
  r.widen(nvars);
  const Exponent& eb = b.leading_exponent();
  Rational inv = b.leading_coeff().inverse();
  while (!r.is_zero()) {
    const Exponent er = r.leading_exponent();
    if (!er.divisible_by(eb)) return std::nullopt;
    Exponent et = er - eb;
    Rational ct = r.leading_coeff() * inv;
    q.add_term(et, ct);
    for (const auto& [e, c] : b.terms()) r.add_term(e + et, -(c * ct));
  }
  return q;
}

PolyQ poly_gcd(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() && b.is_zero()) return PolyQ(std::max(a.nvars(), b.nvars()));
  PolyQ g = gcd_impl(a, b);
  g.widen(std::max(a.nvars(), b.nvars()));
  return g;
}

}  // namespace qsym
