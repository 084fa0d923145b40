#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qsym/core/multipoly.hpp"
#include "qsym/core/rational.hpp"

namespace qsym {

template <class K>
struct RingOps {
  static K zero() { return K(0); }
  static K one() { return K(1); }
};

template <class K>
struct RingOps<MultiPoly<K>> {
  static MultiPoly<K> zero() { return MultiPoly<K>(0); }
  static MultiPoly<K> one() { return MultiPoly<K>::constant(0, K(1)); }
};

// Dense row-major matrix over a commutative ring.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, RingOps<K>::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RingOps<K>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  friend Matrix operator*(const K& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix r(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(rows[i], cols[j]);
    return r;
  }

  std::vector<K> row(std::size_t i) const {
    return std::vector<K>(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<K> out(rows_, RingOps<K>::zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

template <class K>
struct RankResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::vector<K>> kernel;  // basis of {v : m v = 0}
};

namespace detail {

// Bareiss elimination of a rational matrix after clearing each row's denominators, so every
// division is an exact integer division. Row scaling keeps rank and pivot columns.
inline RankResult<Rational> integer_rank(const Matrix<Rational>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Integer scale = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j).raw().get_num() * (scale / m(i, j).raw().get_den());
  }
  RankResult<Rational> res;
  Integer prev = 1, v;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p * cols + c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const Integer& piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        v = piv * a[i * cols + j] - lead * a[r * cols + j];
        mpz_divexact(a[i * cols + j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = piv;
    res.pivot_columns.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

}  // namespace detail

// Fraction-free (Bareiss) elimination over a field. The kernel basis has one vector per
// non-pivot column, with a 1 in that column.
template <class K>
RankResult<K> exact_rank(const Matrix<K>& m, bool want_kernel = true) {
  if constexpr (std::is_same_v<K, Rational>) {
    if (!want_kernel) return detail::integer_rank(m);
  }
  Matrix<K> a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  RankResult<K> res;
  K prev = RingOps<K>::one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a(p, c))) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const K piv = a(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const K lead = a(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        K v = piv * a(i, j);
        if (!is_zero(lead) && !is_zero(a(r, j))) v -= lead * a(r, j);
        a(i, j) = v / prev;
      }
      a(i, c) = RingOps<K>::zero();
    }
    prev = piv;
    res.pivot_columns.push_back(c);
    ++r;
  }
  res.rank = r;
  if (!want_kernel) return res;

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : res.pivot_columns) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(cols, RingOps<K>::zero());
    v[f] = RingOps<K>::one();
    for (std::size_t k = r; k-- > 0;) {
      std::size_t pc = res.pivot_columns[k];
      K s = RingOps<K>::zero();
      for (std::size_t j = pc + 1; j < cols; ++j)
        if (!is_zero(v[j]) && !is_zero(a(k, j))) s += a(k, j) * v[j];
      v[pc] = -(s / a(k, pc));
    }
    res.kernel.push_back(std::move(v));
  }
  return res;
}

// Coefficients (1, c_1, ..., c_n) of det(t I - m), highest degree first. Division-free
// (Berkowitz), so valid over any commutative ring.
template <class K>
std::vector<K> char_poly(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<K> poly{RingOps<K>::one()};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<K> col(k + 2, RingOps<K>::zero());
    col[0] = RingOps<K>::one();
    col[1] = -m(k, k);
    std::vector<K> v(k, RingOps<K>::zero());
    for (std::size_t i = 0; i < k; ++i) v[i] = m(i, k);
    for (std::size_t j = 0; j < k; ++j) {
      K s = RingOps<K>::zero();
      for (std::size_t i = 0; i < k; ++i)
        if (!is_zero(m(k, i)) && !is_zero(v[i])) s += m(k, i) * v[i];
      col[j + 2] = -s;
      if (j + 1 < k) {
        std::vector<K> w(k, RingOps<K>::zero());
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t l = 0; l < k; ++l)
            if (!is_zero(m(i, l)) && !is_zero(v[l])) w[i] += m(i, l) * v[l];
        v = std::move(w);
      }
    }
    std::vector<K> next(k + 2, RingOps<K>::zero());
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j)
        if (!is_zero(col[i - j]) && !is_zero(poly[j])) next[i] += col[i - j] * poly[j];
    poly = std::move(next);
  }
  return poly;
}

// Inverse over a field, std::nullopt when singular.
template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse needs a square matrix");
  const std::size_t n = m.rows();
  Matrix<K> a = m;
  Matrix<K> inv = Matrix<K>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    K piv_inv = RingOps<K>::one() / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = a(c, j) * piv_inv;
      inv(c, j) = inv(c, j) * piv_inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero(a(i, c))) continue;
      K f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_zero(a(c, j))) a(i, j) -= f * a(c, j);
        if (!is_zero(inv(c, j))) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// A solution x of m x = b over a field (free variables set to zero), or std::nullopt.
template <class K>
std::optional<std::vector<K>> solve_linear(const Matrix<K>& m, const std::vector<K>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<K> a(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m(i, j);
    a(i, cols) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a(p, c))) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j <= cols; ++j) std::swap(a(p, j), a(r, j));
    K piv_inv = RingOps<K>::one() / a(r, c);
    for (std::size_t j = c; j <= cols; ++j) a(r, j) = a(r, j) * piv_inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      K f = a(i, c);
      for (std::size_t j = c; j <= cols; ++j)
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!is_zero(a(i, cols))) return std::nullopt;
  std::vector<K> x(cols, RingOps<K>::zero());
  for (std::size_t k = 0; k < r; ++k) x[pivots[k]] = a(k, cols);
  return x;
}

// Row space grown one vector at a time; used for greedy selection by rank growth.
template <class K>
class IncrementalRank {
 public:
  explicit IncrementalRank(std::size_t cols) : cols_(cols) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  // Adds v when it is independent of the rows so far; returns whether it was added.
  bool try_add(std::vector<K> v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (is_zero(v[p])) continue;
      const K f = v[p];
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero(rows_[k][j])) v[j] -= f * rows_[k][j];
    }
    std::size_t p = 0;
    while (p < cols_ && is_zero(v[p])) ++p;
    if (p == cols_) return false;
    const K inv = RingOps<K>::one() / v[p];
    for (auto& x : v) x = x * inv;
    for (auto& row : rows_)
      if (!is_zero(row[p])) {
        const K f = row[p];
        for (std::size_t j = 0; j < cols_; ++j)
          if (!is_zero(v[j])) row[j] -= f * v[j];
      }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<K>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace qsym
