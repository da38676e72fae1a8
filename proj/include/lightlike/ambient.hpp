#pragma once

// Flat semi-Euclidean ambient spaces and constant metallic structures.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lightlike/errors.hpp"
#include "lightlike/linalg.hpp"
#include "lightlike/scalar.hpp"

namespace lightlike {

struct SignatureSpace {
  std::vector<int> epsilon;

  explicit SignatureSpace(std::vector<int> signs) : epsilon(std::move(signs)) {
    if (epsilon.empty()) fail(ErrorKind::ShapeError, "empty signature");
    for (int e : epsilon)
      if (e != 1 && e != -1) fail(ErrorKind::ValidationError, "signature entries must be +1 or -1");
  }

  std::size_t dim() const { return epsilon.size(); }

  bool is_mixed() const {
    bool neg = false, pos = false;
    for (int e : epsilon) (e < 0 ? neg : pos) = true;
    return neg && pos;
  }

  template <class T>
  T g(const Vec<T>& u, const Vec<T>& v) const {
    return inner(epsilon, u, v);
  }
};

/// A failed exact identity, located by matrix position.
struct Witness {
  std::size_t row = 0;
  std::size_t col = 0;
  QuadScalar value;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
  explicit operator bool() const { return holds; }
};

namespace detail {

inline Verdict first_nonzero(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return Verdict{false, Witness{i, j, m(i, j)}};
  return Verdict{};
}

inline void require_square(const QMatrix& j) {
  if (j.rows() != j.cols() || j.rows() == 0) fail(ErrorKind::ShapeError, "structure tensor must be square");
}

}  // namespace detail

/// J^2 - pJ - qI == 0 entrywise.
inline Verdict validate_metallic(const QMatrix& j, const MetallicParams& params) {
  params.validate();
  detail::require_square(j);
  QMatrix r = j * j;
  QuadScalar p(static_cast<long>(params.p));
  QuadScalar q(static_cast<long>(params.q));
  for (std::size_t a = 0; a < r.rows(); ++a)
    for (std::size_t b = 0; b < r.cols(); ++b) {
      r(a, b) -= p * j(a, b);
      if (a == b) r(a, b) -= q;
    }
  return detail::first_nonzero(r);
}

/// g(JX, Y) == g(X, JY): diag(epsilon) * J symmetric.
inline Verdict validate_compatibility(const QMatrix& j, const SignatureSpace& space) {
  detail::require_square(j);
  if (j.rows() != space.dim()) fail(ErrorKind::ShapeError, "structure and signature dimensions differ");
  std::size_t n = j.rows();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      QuadScalar lhs = space.epsilon[a] > 0 ? j(a, b) : -j(a, b);
      QuadScalar rhs = space.epsilon[b] > 0 ? j(b, a) : -j(b, a);
      if (!(lhs == rhs)) return Verdict{false, Witness{a, b, lhs - rhs}};
    }
  return Verdict{};
}

/// Residual matrix of g(JW, JU) - p g(JW, U) - q g(W, U) over standard basis pairs.
inline QMatrix quadratic_identity_residual(const QMatrix& j, const SignatureSpace& space,
                                           const MetallicParams& params) {
  std::size_t n = space.dim();
  QMatrix r(n, n);
  std::vector<QVec> cols;
  for (std::size_t a = 0; a < n; ++a) cols.push_back(j.col(a));
  QuadScalar p(static_cast<long>(params.p));
  QuadScalar q(static_cast<long>(params.q));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      QVec ea(n), eb(n);
      ea[a] = 1;
      eb[b] = 1;
      r(a, b) = space.g(cols[a], cols[b]) - p * space.g(cols[a], eb) - q * space.g(ea, eb);
    }
  return r;
}

enum class Branch { Sigma, PMinusSigma };

class MetallicStructure {
 public:
  MetallicStructure(MetallicParams params, QMatrix j) : params_(params), j_(std::move(j)) {
    params_.validate();
    detail::require_square(j_);
  }

  const MetallicParams& params() const { return params_; }
  const QMatrix& matrix() const { return j_; }
  std::size_t dim() const { return j_.rows(); }

  template <class T>
  Vec<T> apply(const Vec<T>& v) const {
    if (v.size() != dim()) fail(ErrorKind::ShapeError, "vector dimension does not match structure");
    Vec<T> r(dim());
    for (std::size_t a = 0; a < dim(); ++a)
      for (std::size_t b = 0; b < dim(); ++b)
        if (!j_(a, b).is_zero() && !is_zero(v[b])) r[a] += T(j_(a, b)) * v[b];
    return r;
  }

 private:
  MetallicParams params_;
  QMatrix j_;
};

/// Diagonal structure with sigma or p - sigma on each axis.
inline MetallicStructure diag_metallic(const MetallicParams& params, const std::vector<Branch>& branches) {
  params.validate();
  std::size_t n = branches.size();
  QMatrix j(n, n);
  QuadScalar s = QuadScalar::sigma(params);
  QuadScalar conj = QuadScalar(static_cast<long>(params.p)) - s;
  for (std::size_t i = 0; i < n; ++i) j(i, i) = branches[i] == Branch::Sigma ? s : conj;
  return MetallicStructure(params, std::move(j));
}

inline QVec apply_J(const MetallicStructure& s, const QVec& v) { return s.apply(v); }

}  // namespace lightlike
