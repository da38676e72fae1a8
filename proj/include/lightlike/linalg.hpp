#pragma once

// Exact dense linear algebra over any field-like scalar providing
// is_zero(x) and is_unit(x). Used with QuadScalar and with first-order jets
// of QuadScalar; for jets, elimination pivots on invertible entries only and
// a leftover non-zero block means the rank is not locally constant.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightlike/errors.hpp"
#include "lightlike/jet.hpp"
#include "lightlike/scalar.hpp"

namespace lightlike {

template <class T>
using Vec = std::vector<T>;

using QVec = Vec<QuadScalar>;
using JVec = Vec<QJet>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) fail(ErrorKind::ShapeError, "matrix entry count mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<Vec<T>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) fail(ErrorKind::ShapeError, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix from_rows(std::size_t cols, const std::vector<Vec<T>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(ErrorKind::ShapeError, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  Vec<T> row(std::size_t i) const { return Vec<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vec<T> col(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<QuadScalar>;
using JMatrix = Matrix<QJet>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::ShapeError, "matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Vec<T> operator*(const Matrix<T>& a, const Vec<T>& v) {
  if (a.cols() != v.size()) fail(ErrorKind::ShapeError, "matrix-vector shape mismatch");
  Vec<T> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(v[j])) r[i] += a(i, j) * v[j];
  return r;
}

template <class T>
Vec<T> operator+(Vec<T> a, const Vec<T>& b) {
  if (a.size() != b.size()) fail(ErrorKind::ShapeError, "vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
Vec<T> operator-(Vec<T> a, const Vec<T>& b) {
  if (a.size() != b.size()) fail(ErrorKind::ShapeError, "vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T>
Vec<T> operator-(Vec<T> a) {
  for (auto& x : a) x = -x;
  return a;
}

template <class T>
Vec<T> scale(const T& c, Vec<T> v) {
  for (auto& x : v) x = c * x;
  return v;
}

template <class T>
bool is_zero_vec(const Vec<T>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// sum_i c_i v_i over a list of equally sized vectors.
template <class T>
Vec<T> combine(const Vec<T>& coeffs, const std::vector<Vec<T>>& vectors, std::size_t dim) {
  if (coeffs.size() != vectors.size()) fail(ErrorKind::ShapeError, "coefficient count mismatch");
  Vec<T> r(dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (is_zero(coeffs[i])) continue;
    if (vectors[i].size() != dim) fail(ErrorKind::ShapeError, "vector length mismatch");
    for (std::size_t k = 0; k < dim; ++k) r[k] += coeffs[i] * vectors[i][k];
  }
  return r;
}

template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each leading row
};

namespace detail {

// Reduced row echelon form on the first `pivot_cols` columns; remaining
// columns are carried along (augmented right-hand sides).
template <class T>
Echelon<T> reduce(Matrix<T> m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t pr = m.rows();
    for (std::size_t i = row; i < m.rows(); ++i)
      if (is_unit(m(i, col))) {
        pr = i;
        break;
      }
    if (pr == m.rows()) continue;
    if (pr != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(row, j));
    T inv = T(1) / m(row, col);
    // Earlier skipped columns may hold value-zero jets, so rows are updated in full.
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      T f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m.rows(); ++i)
    for (std::size_t j = 0; j < pivot_cols; ++j)
      if (!is_zero(m(i, j)))
        fail(ErrorKind::RankNotLocallyConstant, "rank changes to first order at the evaluation point");
  return {std::move(m), std::move(pivots)};
}

}  // namespace detail

template <class T>
Echelon<T> rref(const Matrix<T>& m) {
  return detail::reduce(m, m.cols());
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

/// Right kernel basis: one vector per free column, free entry 1, pivots solved.
template <class T>
std::vector<Vec<T>> null_space(const Matrix<T>& m) {
  Echelon<T> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(m.cols());
    v[f] = T(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Particular solution (free variables zero), or nullopt when inconsistent.
template <class T>
std::optional<Vec<T>> solve(const Matrix<T>& m, const Vec<T>& rhs) {
  if (rhs.size() != m.rows()) fail(ErrorKind::ShapeError, "right-hand side length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  Echelon<T> e = detail::reduce(std::move(aug), m.cols());
  for (std::size_t i = e.pivots.size(); i < m.rows(); ++i)
    if (!is_zero(e.reduced(i, m.cols()))) return std::nullopt;
  Vec<T> x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::ShapeError, "inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  Echelon<T> e = detail::reduce(std::move(aug), n);
  if (e.pivots.size() != n) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Flat semi-Euclidean inner product with diagonal signs.
template <class T>
T inner(const std::vector<int>& signature, const Vec<T>& u, const Vec<T>& v) {
  if (u.size() != signature.size() || v.size() != signature.size())
    fail(ErrorKind::ShapeError, "vector length does not match signature");
  T s{};
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (is_zero(u[k]) || is_zero(v[k])) continue;
    if (signature[k] > 0)
      s += u[k] * v[k];
    else
      s -= u[k] * v[k];
  }
  return s;
}

template <class T>
Matrix<T> gram(const std::vector<int>& signature, const std::vector<Vec<T>>& vectors) {
  std::size_t k = vectors.size();
  Matrix<T> g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      g(i, j) = inner(signature, vectors[i], vectors[j]);
      if (i != j) g(j, i) = g(i, j);
    }
  return g;
}

/// Coefficients c with v = sum c_i basis_i; throws NotInSpan.
template <class T>
Vec<T> coords_in_basis(const std::vector<Vec<T>>& basis, const Vec<T>& v) {
  Matrix<T> m = Matrix<T>::from_columns(v.size(), basis);
  auto x = solve(m, v);
  if (!x) fail(ErrorKind::NotInSpan, "vector is not in the span of the basis");
  return *x;
}

/// Linear subspace stored through its canonical reduced-echelon basis.
template <class T>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : dim_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vec<T>>& vectors) {
    Subspace s(ambient_dim);
    if (vectors.empty()) return s;
    Echelon<T> e = rref(Matrix<T>::from_rows(ambient_dim, vectors));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) s.basis_.push_back(e.reduced.row(i));
    return s;
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<T>>& basis() const { return basis_; }

  bool contains(const Vec<T>& v) const {
    if (v.size() != dim_) fail(ErrorKind::ShapeError, "ambient dimension mismatch");
    if (basis_.empty()) return is_zero_vec(v);
    return solve(Matrix<T>::from_columns(dim_, basis_), v).has_value();
  }

  bool contains(const Subspace& other) const {
    check(other);
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  Subspace sum(const Subspace& other) const {
    check(other);
    std::vector<Vec<T>> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(dim_, all);
  }

  Subspace intersect(const Subspace& other) const {
    check(other);
    if (basis_.empty() || other.basis_.empty()) return Subspace(dim_);
    // a.x = b.y  <=>  [A | -B] (x, y) = 0
    std::size_t ka = basis_.size();
    std::size_t kb = other.basis_.size();
    Matrix<T> m(dim_, ka + kb);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < ka; ++j) m(i, j) = basis_[j][i];
      for (std::size_t j = 0; j < kb; ++j) m(i, ka + j) = -other.basis_[j][i];
    }
    std::vector<Vec<T>> vs;
    for (const auto& x : null_space(m)) {
      Vec<T> coeff(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ka));
      vs.push_back(combine(coeff, basis_, dim_));
    }
    return span(dim_, vs);
  }

  Vec<T> coords(const Vec<T>& v) const { return coords_in_basis(basis_, v); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }

 private:
  void check(const Subspace& other) const {
    if (other.dim_ != dim_) fail(ErrorKind::ShapeError, "ambient dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<Vec<T>> basis_;
};

using QSubspace = Subspace<QuadScalar>;

enum class SubspaceRelation { Equal, Contains };

/// equal: same span (rank test); contains: B inside A.
template <class T>
bool subspace_relation(const Subspace<T>& a, const Subspace<T>& b, SubspaceRelation op) {
  if (op == SubspaceRelation::Contains) return a.contains(b);
  return a.dim() == b.dim() && a.sum(b).dim() == a.dim();
}

/// Vectors of `within` (given by a spanning basis) orthogonal to all `against`.
template <class T>
std::vector<Vec<T>> orthogonal_within(const std::vector<int>& signature, const std::vector<Vec<T>>& within,
                                      const std::vector<Vec<T>>& against) {
  std::size_t n = signature.size();
  if (against.empty()) return within;
  Matrix<T> m(against.size(), within.size());
  for (std::size_t i = 0; i < against.size(); ++i)
    for (std::size_t j = 0; j < within.size(); ++j) m(i, j) = inner(signature, against[i], within[j]);
  std::vector<Vec<T>> out;
  for (const auto& c : null_space(m)) out.push_back(combine(c, within, n));
  return out;
}

/// Orthogonal complement of span(vectors) in the whole ambient space.
template <class T>
std::vector<Vec<T>> orthogonal_complement(const std::vector<int>& signature, const std::vector<Vec<T>>& vectors) {
  std::size_t n = signature.size();
  if (vectors.empty()) {
    std::vector<Vec<T>> e;
    for (std::size_t i = 0; i < n; ++i) {
      Vec<T> v(n);
      v[i] = T(1);
      e.push_back(v);
    }
    return e;
  }
  Matrix<T> m(vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = signature[k] > 0 ? vectors[i][k] : -vectors[i][k];
  return null_space(m);
}

inline std::string format(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format(v[i]);
  }
  return s + ")";
}

}  // namespace lightlike
