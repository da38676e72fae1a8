#pragma once

// Seeded generators for lightlike configurations: rational isometries,
// linear frames with prescribed radical rank, and polynomial immersions
// whose second-order terms are constrained to keep the radical rank
// locally constant.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lightlike/ambient.hpp"
#include "lightlike/linalg.hpp"
#include "lightlike/polynomial.hpp"
#include "lightlike/scalar.hpp"
#include "lightlike/submanifold.hpp"

namespace lightlike {

using Rng = std::mt19937_64;

inline QuadScalar random_scalar(Rng& rng, const MetallicParams& params, int range = 3, int den = 2,
                                bool use_sigma = true) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> dd(1, den);
  Rational a(num(rng), dd(rng));
  a.canonicalize();
  if (!use_sigma) return QuadScalar(a);
  Rational b(num(rng), dd(rng));
  b.canonicalize();
  return QuadScalar(a, b, params);
}

inline QuadScalar random_rational(Rng& rng, int range = 3, int den = 2) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> dd(1, den);
  Rational a(num(rng), dd(rng));
  a.canonicalize();
  return QuadScalar(a);
}

/// Random invertible k x k matrix with entries in Q(sigma).
inline QMatrix random_invertible(Rng& rng, const MetallicParams& params, std::size_t k) {
  while (true) {
    QMatrix r(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) r(i, j) = random_scalar(rng, params, 2, 2);
    if (rank(r) == k) return r;
  }
}

/// Product of rational rotations and boosts in coordinate planes. With
/// `blocks`, only planes inside one block are used, so a structure that is
/// a multiple of the identity on each block commutes with the result.
inline QMatrix random_isometry(Rng& rng, const std::vector<int>& eps, std::size_t steps,
                               const std::vector<int>& blocks = {}) {
  const std::size_t n = eps.size();
  QMatrix q = QMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> axis(0, n - 1);
  std::uniform_int_distribution<int> tnum(1, 4);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t i = axis(rng), j = axis(rng);
    if (i == j) continue;
    if (!blocks.empty() && blocks[i] != blocks[j]) continue;
    // t in (-1, 1) rational; c, d from the rational parametrization of the conic.
    Rational t(tnum(rng), 5);
    if (flip(rng)) t = -t;
    QMatrix e = QMatrix::identity(n);
    if (eps[i] == eps[j]) {
      Rational den = 1 + t * t;
      QuadScalar c(Rational((1 - t * t) / den)), d(Rational(2 * t / den));
      e(i, i) = c;
      e(i, j) = -d;
      e(j, i) = d;
      e(j, j) = c;
    } else {
      Rational den = 1 - t * t;
      QuadScalar c(Rational((1 + t * t) / den)), d(Rational(2 * t / den));
      e(i, i) = c;
      e(i, j) = d;
      e(j, i) = d;
      e(j, j) = c;
    }
    q = e * q;
  }
  return q;
}

/// Linear frame data for a lightlike tangent space.
struct LinearLightlike {
  std::vector<int> eps;
  std::vector<QVec> xi;      // null, mutually orthogonal
  std::vector<QVec> screen;  // non-degenerate, orthogonal to xi
  std::vector<QVec> columns; // tangent basis (mixed)
};

/// Tangent space of dimension m with radical rank r inside a random
/// signature of dimension n (needs n >= m + r and room for r null pairs).
inline LinearLightlike random_linear_lightlike(Rng& rng, const MetallicParams& params, std::size_t n, std::size_t m,
                                               std::size_t r) {
  if (m < r || n < m + r) fail(ErrorKind::ParamError, "need r <= m and m + r <= n");
  LinearLightlike out;
  // Axes 0..2r-1 form r hyperbolic pairs; the rest get random signs.
  out.eps.assign(n, 1);
  std::bernoulli_distribution neg(0.4);
  for (std::size_t k = 0; k < r; ++k) out.eps[2 * k] = -1;
  for (std::size_t a = 2 * r; a < n; ++a) out.eps[a] = neg(rng) ? -1 : 1;
  for (std::size_t k = 0; k < r; ++k) {
    QVec v(n);
    v[2 * k] = 1;
    v[2 * k + 1] = 1;
    out.xi.push_back(v);
  }
  for (std::size_t k = 0; k < m - r; ++k) {
    QVec v(n);
    v[2 * r + k] = 1;
    out.screen.push_back(v);
  }
  QMatrix iso = random_isometry(rng, out.eps, 3 * n);
  for (auto& v : out.xi) v = iso * v;
  for (auto& v : out.screen) v = iso * v;
  std::vector<QVec> base = out.xi;
  base.insert(base.end(), out.screen.begin(), out.screen.end());
  QMatrix mix = random_invertible(rng, params, m);
  for (std::size_t i = 0; i < m; ++i) out.columns.push_back(combine(mix.col(i), base, n));
  return out;
}

/// Linear immersion u -> sum_i u_i columns_i.
inline PolynomialImmersion linear_immersion(const std::vector<QVec>& columns) {
  const std::size_t m = columns.size();
  const std::size_t n = columns.at(0).size();
  std::vector<Polynomial> comps(n, Polynomial(m));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < m; ++i)
      if (!columns[i][a].is_zero()) comps[a] += columns[i][a] * Polynomial::variable(m, i);
  return PolynomialImmersion(m, std::move(comps));
}

/// Coordinates on symmetric bilinear maps H: R^m x R^m -> R^n, one
/// unknown per (component a, k <= l).
class HessianSpace {
 public:
  HessianSpace(std::size_t n, std::size_t m) : n_(n), m_(m) {}

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t size() const { return n_ * m_ * (m_ + 1) / 2; }

  std::size_t index(std::size_t a, std::size_t k, std::size_t l) const {
    if (k > l) std::swap(k, l);
    return a * (m_ * (m_ + 1) / 2) + k * m_ - k * (k + 1) / 2 + l;
  }

  /// H(x, y) for coordinates h.
  QVec apply(const QVec& h, const QVec& x, const QVec& y) const {
    QVec r(n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t k = 0; k < m_; ++k) {
        if (x[k].is_zero()) continue;
        for (std::size_t l = 0; l < m_; ++l) {
          const QuadScalar& c = h[index(a, k, l)];
          if (!y[l].is_zero() && !c.is_zero()) r[a] += x[k] * y[l] * c;
        }
      }
    return r;
  }

 private:
  std::size_t n_, m_;
};

/// f(u) = A (u - u0) + 1/2 H(u - u0, u - u0).
inline PolynomialImmersion quadratic_immersion(const std::vector<QVec>& columns, const HessianSpace& hs, const QVec& h,
                                               const QVec& u0) {
  const std::size_t m = hs.m(), n = hs.n();
  std::vector<Polynomial> shifted;
  for (std::size_t i = 0; i < m; ++i) shifted.push_back(Polynomial::variable(m, i) - Polynomial(m, u0[i]));
  std::vector<Polynomial> comps(n, Polynomial(m));
  QuadScalar half(Rational(1, 2));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < m; ++i)
      if (!columns[i][a].is_zero()) comps[a] += columns[i][a] * shifted[i];
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) {
        const QuadScalar& c = h[hs.index(a, k, l)];
        if (!c.is_zero()) comps[a] += (half * c) * (shifted[k] * shifted[l]);
      }
  }
  return PolynomialImmersion(m, std::move(comps));
}

/// Basis of Hessians keeping the radical rank constant to first order:
/// g(H(e_k, c_i), xi_j) + g(xi_i, H(e_k, c_j)) = 0 for kernel vectors c.
inline std::vector<QVec> constant_rank_hessians(const std::vector<int>& eps, const std::vector<QVec>& columns) {
  const std::size_t n = eps.size(), m = columns.size();
  HessianSpace hs(n, m);
  auto kernel = null_space(gram(eps, columns));
  std::vector<QVec> xi;
  for (const auto& c : kernel) xi.push_back(combine(c, columns, n));
  std::vector<QVec> rows;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < kernel.size(); ++i)
      for (std::size_t j = i; j < kernel.size(); ++j) {
        QVec row(hs.size());
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t l = 0; l < m; ++l) {
            QuadScalar c = kernel[i][l] * xi[j][a] + kernel[j][l] * xi[i][a];
            if (c.is_zero()) continue;
            row[hs.index(a, k, l)] += eps[a] > 0 ? c : -c;
          }
        rows.push_back(std::move(row));
      }
  if (rows.empty()) {
    std::vector<QVec> all;
    for (std::size_t t = 0; t < hs.size(); ++t) {
      QVec e(hs.size());
      e[t] = 1;
      all.push_back(e);
    }
    return all;
  }
  return null_space(QMatrix::from_rows(hs.size(), rows));
}

/// Restrict a basis to the kernel of a map that is linear on its span.
template <class F>
std::vector<QVec> refine(const std::vector<QVec>& basis, F&& residual) {
  if (basis.empty()) return {};
  std::vector<QVec> images;
  for (const auto& b : basis) images.push_back(residual(b));
  const std::size_t k = images.front().size();
  if (k == 0) return basis;
  QMatrix m = QMatrix::from_columns(k, images);
  std::vector<QVec> out;
  for (const auto& c : null_space(m)) out.push_back(combine(c, basis, basis.front().size()));
  return out;
}

inline QVec random_combination(Rng& rng, const MetallicParams& params, const std::vector<QVec>& basis,
                               std::size_t dim) {
  QVec r(dim);
  for (const auto& b : basis) r = r + scale(random_scalar(rng, params, 2, 2), b);
  return r;
}

inline QVec random_point(Rng& rng, std::size_t m) {
  QVec u(m);
  for (auto& x : u) x = random_rational(rng, 2, 2);
  return u;
}

/// Random polynomial field of degree <= deg with coefficients in Q(sigma).
inline std::vector<Polynomial> random_polynomials(Rng& rng, const MetallicParams& params, std::size_t count,
                                                  std::size_t vars, unsigned deg) {
  std::vector<Polynomial> out;
  std::bernoulli_distribution keep(0.6);
  for (std::size_t c = 0; c < count; ++c) {
    Polynomial p(vars, random_scalar(rng, params, 2, 2));
    for (std::size_t i = 0; i < vars; ++i) {
      Polynomial x = Polynomial::variable(vars, i);
      if (deg >= 1 && keep(rng)) p += random_scalar(rng, params, 2, 2) * x;
      if (deg >= 2)
        for (std::size_t j = i; j < vars; ++j)
          if (keep(rng)) p += random_scalar(rng, params, 1, 2) * (x * Polynomial::variable(vars, j));
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Generic lightlike polynomial scene: quadratic immersion with locally
/// constant radical rank through a random point.
struct PolynomialScene {
  MetallicParams params;
  std::vector<int> eps;
  PolynomialImmersion immersion;
  QVec point;
  std::size_t r = 0;
};

inline PolynomialScene random_polynomial_scene(Rng& rng, const MetallicParams& params, std::size_t n, std::size_t m,
                                               std::size_t r) {
  auto lin = random_linear_lightlike(rng, params, n, m, r);
  HessianSpace hs(n, m);
  auto basis = constant_rank_hessians(lin.eps, lin.columns);
  QVec h = random_combination(rng, params, basis, hs.size());
  QVec u0 = random_point(rng, m);
  return PolynomialScene{params, lin.eps, quadratic_immersion(lin.columns, hs, h, u0), u0, r};
}

}  // namespace lightlike
