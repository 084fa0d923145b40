#include "qsym/son/so_algebra.hpp"

#include <stdexcept>

namespace qsym::son {

SoAlgebra::SoAlgebra(std::size_t n) : n_(n), dim_(n * (n - 1) / 2), index_(n * n, 0) {
  if (n < 2) throw std::invalid_argument("so(n) needs n >= 2");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      index_[i * n + j] = pairs_.size();
      pairs_.emplace_back(i, j);
    }
  table_.resize(dim_ * dim_);
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b) {
      auto [i, j] = pairs_[a];
      auto [h, k] = pairs_[b];
      // -d_ih D^{jk} - d_jk D^{ih} + d_ik D^{jh} + d_jh D^{ik}
      std::vector<long> acc(dim_, 0);
      auto add = [&](int coeff, std::size_t x, std::size_t y) {
        auto s = signed_index(x, y);
        if (s) acc[s->index] += coeff * s->sign;
      };
      if (i == h) add(-1, j, k);
      if (j == k) add(-1, i, h);
      if (i == k) add(1, j, h);
      if (j == h) add(1, i, k);
      std::optional<SignedGen> term;
      for (std::size_t c = 0; c < dim_; ++c) {
        if (acc[c] == 0) continue;
        if (term || (acc[c] != 1 && acc[c] != -1)) throw std::logic_error("unexpected so(n) structure constant");
        term = SignedGen{static_cast<int>(acc[c]), c};
      }
      table_[a * dim_ + b] = term;
    }
}

std::size_t SoAlgebra::index(std::size_t i, std::size_t j) const {
  if (!(i < j && j < n_)) throw std::out_of_range("pair index requires i < j < n");
  return index_[i * n_ + j];
}

std::optional<SignedGen> SoAlgebra::signed_index(std::size_t i, std::size_t j) const {
  if (i == j) return std::nullopt;
  if (i < j) return SignedGen{1, index(i, j)};
  return SignedGen{-1, index(j, i)};
}

std::string SoAlgebra::label(std::size_t a) const {
  return std::to_string(pairs_[a].first + 1) + "_" + std::to_string(pairs_[a].second + 1);
}

Matrix<Rational> basis_element(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw std::out_of_range("basis index out of range");
  Matrix<Rational> m(n, n);
  if (i == j) return m;
  m(i, j) = Rational(1);
  m(j, i) = Rational(-1);
  return m;
}

Matrix<Rational> ad_matrix(const SoAlgebra& g, const SkewMatrix<Rational>& a) {
  const std::size_t dim = g.dim();
  Matrix<Rational> m(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const Rational& ax = a.upper()[x];
    if (ax.is_zero()) continue;
    for (std::size_t b = 0; b < dim; ++b) {
      auto c = g.bracket(x, b);
      if (!c) continue;
      if (c->sign > 0) m(c->index, b) += ax;
      else m(c->index, b) -= ax;
    }
  }
  return m;
}

std::size_t ad_kernel_dim(const SoAlgebra& g, const SkewMatrix<Rational>& a) {
  return g.dim() - exact_rank(ad_matrix(g, a), false).rank;
}

SigmaTriple sigma_triple(const SoAlgebra& g, const SkewMatrix<Rational>& a, const std::vector<std::size_t>& commutant) {
  Matrix<Rational> ad = ad_matrix(g, a);
  std::vector<std::size_t> all(g.dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  SigmaTriple s;
  const std::size_t m = commutant.size();
  s.s1 = g.dim() - (m ? exact_rank(ad.submatrix(commutant, all), false).rank : 0);
  s.s2 = m - (m ? exact_rank(ad.submatrix(commutant, commutant), false).rank : 0);
  s.s3 = m - (m ? exact_rank(ad.submatrix(all, commutant), false).rank : 0);
  return s;
}

std::optional<Matrix<Rational>> cayley_orthogonal(const SkewMatrix<Rational>& s) {
  const std::size_t n = s.n();
  Matrix<Rational> id = Matrix<Rational>::identity(n);
  Matrix<Rational> sd = s.dense();
  auto inv = inverse(id + sd);
  if (!inv) return std::nullopt;
  return (id - sd) * *inv;
}

SkewMatrix<Rational> right_from_left(const Matrix<Rational>& x, const SkewMatrix<Rational>& left) {
  const std::size_t n = left.n();
  if (x.rows() != n || x.cols() != n) throw std::invalid_argument("shape mismatch");
  Matrix<Rational> xt = x.transpose();
  if (!(x * xt == Matrix<Rational>::identity(n))) throw std::invalid_argument("matrix is not orthogonal");
  return SkewMatrix<Rational>::from_dense(x * left.dense() * xt);
}

SkewMatrix<Rational> random_skew(std::size_t n, Sampler& sampler, long bound) {
  SkewMatrix<Rational> s(n);
  for (auto& v : s.upper()) v = sampler.rational(bound);
  return s;
}

}  // namespace qsym::son
