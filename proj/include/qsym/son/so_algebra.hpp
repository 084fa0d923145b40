#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsym/core/matrix.hpp"
#include "qsym/core/rational.hpp"
#include "qsym/core/sampler.hpp"

namespace qsym::son {

// Generator with a sign: sign * D^{index}.
struct SignedGen {
  int sign = 0;
  std::size_t index = 0;
};

// Basis of so(n) indexed by pairs i < j (0-based) in lexicographic order.
class SoAlgebra {
 public:
  explicit SoAlgebra(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return dim_; }

  std::size_t index(std::size_t i, std::size_t j) const;  // requires i < j
  std::pair<std::size_t, std::size_t> pair(std::size_t a) const { return pairs_[a]; }
  // D^{ij} for any i != j as a signed basis element; std::nullopt when i == j.
  std::optional<SignedGen> signed_index(std::size_t i, std::size_t j) const;
  // 1-based label "i_j".
  std::string label(std::size_t a) const;

  // [D^a, D^b]; at most one basis element appears.
  std::optional<SignedGen> bracket(std::size_t a, std::size_t b) const { return table_[a * dim_ + b]; }
  bool commute(std::size_t a, std::size_t b) const { return !table_[a * dim_ + b].has_value(); }

 private:
  std::size_t n_;
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> index_;  // n*n lookup, valid for i < j
  std::vector<std::optional<SignedGen>> table_;
};

// (D^{ij})_{kl} = delta_ki delta_lj - delta_kj delta_li, 0-based indices.
Matrix<Rational> basis_element(std::size_t n, std::size_t i, std::size_t j);

// Skew-symmetric matrix stored by its strictly upper entries in pair order.
template <class K>
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(std::size_t n) : n_(n), upper_(n * (n - 1) / 2, RingOps<K>::zero()) {}
  SkewMatrix(std::size_t n, std::vector<K> upper) : n_(n), upper_(std::move(upper)) {
    if (upper_.size() != n * (n - 1) / 2) throw std::invalid_argument("wrong number of skew entries");
  }

  std::size_t n() const { return n_; }
  const std::vector<K>& upper() const { return upper_; }
  std::vector<K>& upper() { return upper_; }

  K get(std::size_t i, std::size_t j) const {
    if (i == j) return RingOps<K>::zero();
    if (i < j) return upper_[flat(i, j)];
    return -upper_[flat(j, i)];
  }
  void set(std::size_t i, std::size_t j, const K& v) {
    if (i == j) throw std::invalid_argument("diagonal of a skew matrix is zero");
    if (i < j) upper_[flat(i, j)] = v;
    else upper_[flat(j, i)] = -v;
  }

  Matrix<K> dense() const {
    Matrix<K> m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        m(i, j) = upper_[flat(i, j)];
        m(j, i) = -upper_[flat(i, j)];
      }
    return m;
  }

  static SkewMatrix from_dense(const Matrix<K>& m) {
    const std::size_t n = m.rows();
    SkewMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_zero(m(i, i))) throw std::invalid_argument("matrix is not skew-symmetric");
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!(m(j, i) == -m(i, j))) throw std::invalid_argument("matrix is not skew-symmetric");
        s.upper_[s.flat(i, j)] = m(i, j);
      }
    }
    return s;
  }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) { return a.n_ == b.n_ && a.upper_ == b.upper_; }

 private:
  std::size_t flat(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

  std::size_t n_ = 0;
  std::vector<K> upper_;
};

// Commutator of skew matrices, computed from the structure constants.
template <class K>
SkewMatrix<K> bracket(const SoAlgebra& g, const SkewMatrix<K>& a, const SkewMatrix<K>& b) {
  SkewMatrix<K> r(g.n());
  for (std::size_t x = 0; x < g.dim(); ++x) {
    if (is_zero(a.upper()[x])) continue;
    for (std::size_t y = 0; y < g.dim(); ++y) {
      if (is_zero(b.upper()[y])) continue;
      auto c = g.bracket(x, y);
      if (!c) continue;
      K t = a.upper()[x] * b.upper()[y];
      if (c->sign > 0) r.upper()[c->index] += t;
      else r.upper()[c->index] -= t;
    }
  }
  return r;
}

// Matrix of ad_A in the pair basis: column b holds the coordinates of [A, D^b].
Matrix<Rational> ad_matrix(const SoAlgebra& g, const SkewMatrix<Rational>& a);

std::size_t ad_kernel_dim(const SoAlgebra& g, const SkewMatrix<Rational>& a);

struct SigmaTriple {
  std::size_t s1 = 0;  // dim ker of (projection to the moment commutant) o ad_A on so(n)
  std::size_t s2 = 0;  // same map restricted to the commutant
  std::size_t s3 = 0;  // dim ker of ad_A restricted to the commutant
};

// commutant lists the pair indices spanning the subalgebra of matrices commuting with the
// moment matrix.
SigmaTriple sigma_triple(const SoAlgebra& g, const SkewMatrix<Rational>& a, const std::vector<std::size_t>& commutant);

// C_k = coefficient of t^{n-2k} in det(t I - A), k = 1 .. floor(n/2). Odd coefficients
// vanish for skew A.
template <class K>
std::vector<K> casimir_set(const SkewMatrix<K>& a) {
  auto cp = char_poly(a.dense());
  std::vector<K> out;
  for (std::size_t k = 1; 2 * k <= a.n(); ++k) out.push_back(cp[2 * k]);
  return out;
}

// X = (I - S)(I + S)^{-1}; std::nullopt when I + S is singular.
std::optional<Matrix<Rational>> cayley_orthogonal(const SkewMatrix<Rational>& s);

// P^R = X P^L X^T; throws unless X is orthogonal.
SkewMatrix<Rational> right_from_left(const Matrix<Rational>& x, const SkewMatrix<Rational>& left);

SkewMatrix<Rational> random_skew(std::size_t n, Sampler& sampler, long bound = kDefaultSampleBound);

}  // namespace qsym::son
