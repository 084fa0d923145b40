#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsym/core/matrix.hpp"
#include "qsym/core/multipoly.hpp"
#include "qsym/son/so_algebra.hpp"

namespace qsym::poisson {

// Polynomial in the momentum components P_ij (i < j), variable index = pair index.
template <class K>
using LiePoissonPoly = MultiPoly<K>;

// Left momenta use the so(n) structure constants; right momenta the opposite sign.
enum class Side { Left, Right };

template <class K>
struct RigidFunction {
  Side side = Side::Left;
  LiePoissonPoly<K> poly;
  std::string label;
};

// P_ij for any i != j (P_ji = -P_ij); zero when i == j.
template <class K>
LiePoissonPoly<K> momentum(const son::SoAlgebra& g, std::size_t i, std::size_t j) {
  LiePoissonPoly<K> p(g.dim());
  auto s = g.signed_index(i, j);
  if (!s) return p;
  p.add_term(Exponent::unit(s->index), K(static_cast<long>(s->sign)));
  return p;
}

template <class K>
LiePoissonPoly<K> lie_poisson_bracket(const son::SoAlgebra& g, const LiePoissonPoly<K>& f, const LiePoissonPoly<K>& h,
                                      Side side = Side::Left) {
  std::unordered_map<Exponent, K, ExponentHash> acc;
  const std::size_t dim = g.dim();
  const long side_sign = side == Side::Left ? 1 : -1;
  for (const auto& [ea, ca] : f.terms()) {
    for (std::size_t a = 0; a < dim; ++a) {
      if (!ea[a]) continue;
      for (const auto& [eb, cb] : h.terms()) {
        for (std::size_t b = 0; b < dim; ++b) {
          if (!eb[b]) continue;
          auto c = g.bracket(a, b);
          if (!c) continue;
          Exponent e = ea + eb;
          e.dec(a);
          e.dec(b);
          e.inc(c->index);
          K coeff = ca * cb * K(side_sign * c->sign * long(ea[a]) * long(eb[b]));
          auto [it, inserted] = acc.try_emplace(e, coeff);
          if (!inserted) it->second += coeff;
        }
      }
    }
  }
  LiePoissonPoly<K> r(dim);
  for (auto& [e, c] : acc)
    if (!is_zero(c)) r.mutable_terms().emplace(e, std::move(c));
  return r;
}

// Coefficients C_1..C_[m/2] of the characteristic polynomial of the principal submatrix of
// the momentum matrix on the given indices, as polynomials in the momenta.
template <class K>
std::vector<LiePoissonPoly<K>> casimir_polys(const son::SoAlgebra& g, const std::vector<std::size_t>& indices) {
  const std::size_t m = indices.size();
  Matrix<LiePoissonPoly<K>> mat(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) mat(a, b) = momentum<K>(g, indices[a], indices[b]);
  auto cp = char_poly(mat);
  std::vector<LiePoissonPoly<K>> out;
  for (std::size_t k = 1; 2 * k <= m; ++k) {
    if (!cp[2 * k - 1].is_zero()) throw std::logic_error("odd characteristic coefficient of a skew matrix");
    LiePoissonPoly<K> c = cp[2 * k];
    c.widen(g.dim());
    out.push_back(std::move(c));
  }
  return out;
}

// Sum of squares of the momenta among the given indices.
template <class K>
LiePoissonPoly<K> momentum_square(const son::SoAlgebra& g, const std::vector<std::size_t>& indices) {
  LiePoissonPoly<K> s(g.dim());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      auto p = momentum<K>(g, indices[a], indices[b]);
      s += p * p;
    }
  return s;
}

}  // namespace qsym::poisson
