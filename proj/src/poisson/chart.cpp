#include "qsym/poisson/chart.hpp"

#include <stdexcept>

namespace qsym::poisson {

RigidPoint make_rigid_point(const son::SoAlgebra& g, son::SkewMatrix<Rational> s, son::SkewMatrix<Rational> left) {
  const std::size_t n = g.n();
  RigidPoint pt;
  auto x = son::cayley_orthogonal(s);
  if (!x) throw std::domain_error("resample point: I + S is singular");
  pt.x = *x;
  pt.right = son::right_from_left(pt.x, left);
  Matrix<Rational> id = Matrix<Rational>::identity(n);
  Matrix<Rational> ips_inv = *inverse(id + s.dense());
  Matrix<Rational> xt = pt.x.transpose();
  Matrix<Rational> pl = left.dense();
  Matrix<Rational> x_pl = pt.x * pl;
  Matrix<Rational> pl_xt = pl * xt;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.pair(a);
    Matrix<Rational> d = son::basis_element(n, i, j);
    // dX = -(I + X) dS (I + S)^{-1}
    Matrix<Rational> dx = -((id + pt.x) * d * ips_inv);
    Matrix<Rational> dr = dx * pl_xt + x_pl * dx.transpose();
    pt.dright_ds.push_back(son::SkewMatrix<Rational>::from_dense(dr));
    pt.dright_dleft.push_back(son::SkewMatrix<Rational>::from_dense(pt.x * d * xt));
  }
  pt.s = std::move(s);
  pt.left = std::move(left);
  return pt;
}

RigidPoint sample_rigid_point(const son::SoAlgebra& g, Sampler& sampler, long bound) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    try {
      auto s = son::random_skew(g.n(), sampler, bound);
      auto l = son::random_skew(g.n(), sampler, bound);
      return make_rigid_point(g, std::move(s), std::move(l));
    } catch (const std::domain_error&) {
    }
  }
  throw std::runtime_error("degenerate chart point after resampling");
}

std::vector<Rational> poly_gradient(const LiePoissonPoly<Rational>& f, const std::vector<Rational>& at) {
  std::vector<Rational> g(at.size());
  for (std::size_t v = 0; v < at.size(); ++v) {
    if (f.degree(v) == 0) continue;
    g[v] = f.derivative(v).evaluate(at);
  }
  return g;
}

std::vector<Rational> rigid_gradient(const son::SoAlgebra& g, const RigidFunction<Rational>& f, const RigidPoint& pt) {
  const std::size_t dim = g.dim();
  std::vector<Rational> out(2 * dim);
  if (f.side == Side::Left) {
    auto grad = poly_gradient(f.poly, pt.left.upper());
    for (std::size_t a = 0; a < dim; ++a) out[dim + a] = grad[a];
    return out;
  }
  auto grad = poly_gradient(f.poly, pt.right.upper());
  for (std::size_t a = 0; a < dim; ++a) {
    Rational ds, dl;
    for (std::size_t c = 0; c < dim; ++c) {
      if (grad[c].is_zero()) continue;
      ds += grad[c] * pt.dright_ds[a].upper()[c];
      dl += grad[c] * pt.dright_dleft[a].upper()[c];
    }
    out[a] = ds;
    out[dim + a] = dl;
  }
  return out;
}

std::size_t jacobian_rank(const son::SoAlgebra& g, const std::vector<RigidFunction<Rational>>& fs, const RigidPoint& pt) {
  Matrix<Rational> m(fs.size(), 2 * g.dim());
  for (std::size_t r = 0; r < fs.size(); ++r) {
    auto grad = rigid_gradient(g, fs[r], pt);
    for (std::size_t c = 0; c < grad.size(); ++c) m(r, c) = grad[c];
  }
  return exact_rank(m, false).rank;
}

std::size_t jacobian_rank(const std::vector<PhasePoly>& fs, const PhasePoint& pt) {
  if (fs.empty()) return 0;
  const std::size_t n = pt.x.size();
  Matrix<Rational> m(fs.size(), 2 * n);
  for (std::size_t r = 0; r < fs.size(); ++r) {
    auto grad = fs[r].gradient(pt);
    for (std::size_t c = 0; c < grad.size(); ++c) m(r, c) = grad[c];
  }
  return exact_rank(m, false).rank;
}

}  // namespace qsym::poisson
