#pragma once

// Polynomial immersions into flat semi-Euclidean space and per-point
// adapted frames: tangent, radical, screen, screen transversal and
// lightlike transversal bundles.
//
// Frames are built over first-order jets in the chart variables so every
// stored basis vector also carries its first derivatives; the value parts
// are the frame at the point. Choices (pivots, greedy picks) are made on
// values only, so the jet parts extend the same frame to first order.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightlike/ambient.hpp"
#include "lightlike/errors.hpp"
#include "lightlike/jet.hpp"
#include "lightlike/linalg.hpp"
#include "lightlike/polynomial.hpp"

namespace lightlike {

class PolynomialImmersion {
 public:
  PolynomialImmersion(std::size_t chart_dim, std::vector<Polynomial> components)
      : m_(chart_dim), components_(std::move(components)) {
    if (m_ == 0) fail(ErrorKind::ShapeError, "chart dimension must be positive");
    if (components_.size() <= m_) fail(ErrorKind::ShapeError, "ambient dimension must exceed chart dimension");
    for (const auto& c : components_)
      if (c.vars() != m_) fail(ErrorKind::ShapeError, "component polynomial has wrong variable count");
    for (const auto& c : components_) {
      std::vector<Polynomial> row;
      for (std::size_t i = 0; i < m_; ++i) row.push_back(c.derivative(i));
      first_.push_back(std::move(row));
    }
  }

  std::size_t chart_dim() const { return m_; }
  std::size_t ambient_dim() const { return components_.size(); }
  const std::vector<Polynomial>& components() const { return components_; }

  QVec evaluate(const QVec& u) const { return lightlike::evaluate(components_, u); }

  /// Jacobian columns d f / d u_i.
  std::vector<QVec> jacobian(const QVec& u) const {
    check(u);
    std::vector<QVec> cols(m_, QVec(ambient_dim()));
    for (std::size_t a = 0; a < ambient_dim(); ++a)
      for (std::size_t i = 0; i < m_; ++i) cols[i][a] = first_[a][i].evaluate(u);
    return cols;
  }

  /// Jacobian columns as jets (value plus second derivatives).
  std::vector<JVec> jacobian_jets(const QVec& u) const {
    check(u);
    std::vector<JVec> cols(m_, JVec(ambient_dim()));
    for (std::size_t a = 0; a < ambient_dim(); ++a)
      for (std::size_t i = 0; i < m_; ++i) cols[i][a] = first_[a][i].jet(u);
    return cols;
  }

  /// Second derivative d^2 f (w, x) at u.
  QVec hessian(const QVec& u, const QVec& w, const QVec& x) const {
    check(u);
    QVec r(ambient_dim());
    for (std::size_t a = 0; a < ambient_dim(); ++a)
      for (std::size_t i = 0; i < m_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          if (w[k].is_zero()) continue;
          QuadScalar d2 = first_[a][i].derivative(k).evaluate(u);
          if (!d2.is_zero()) r[a] += w[k] * x[i] * d2;
        }
      }
    return r;
  }

 private:
  void check(const QVec& u) const {
    if (u.size() != m_) fail(ErrorKind::ShapeError, "chart point has wrong dimension");
  }

  std::size_t m_;
  std::vector<Polynomial> components_;
  std::vector<std::vector<Polynomial>> first_;
};

enum class Case { NonDegenerate, RLightlike, CoIsotropic, Isotropic, TotallyLightlike };

inline const char* to_string(Case c) {
  switch (c) {
    case Case::NonDegenerate: return "non-degenerate";
    case Case::RLightlike: return "r-lightlike";
    case Case::CoIsotropic: return "co-isotropic";
    case Case::Isotropic: return "isotropic";
    case Case::TotallyLightlike: return "totally-lightlike";
  }
  return "unknown";
}

/// r: radical rank, m: dimension, k: codimension.
inline Case classify_case(std::size_t r, std::size_t m, std::size_t k) {
  if (m < 1 || k < 1) fail(ErrorKind::ParamError, "dimension and codimension must be positive");
  std::size_t lo = std::min(m, k);
  if (r > lo) fail(ErrorKind::ParamError, "radical rank exceeds min(m, k)");
  if (r == 0) return Case::NonDegenerate;
  if (r < lo) return Case::RLightlike;
  if (r == k && r < m) return Case::CoIsotropic;
  if (r == m && r < k) return Case::Isotropic;
  return Case::TotallyLightlike;
}

inline QSubspace tangent_frame(const PolynomialImmersion& f, const QVec& u0) {
  auto cols = f.jacobian(u0);
  QSubspace t = QSubspace::span(f.ambient_dim(), cols);
  if (t.dim() < f.chart_dim()) fail(ErrorKind::ImmersionRankDrop, "Jacobian rank below chart dimension");
  return t;
}

/// Radical of the induced metric, as ambient vectors, and its rank.
inline std::pair<QSubspace, std::size_t> radical(const PolynomialImmersion& f, const QVec& u0,
                                                 const SignatureSpace& space) {
  if (space.dim() != f.ambient_dim()) fail(ErrorKind::ShapeError, "signature does not match ambient dimension");
  tangent_frame(f, u0);
  auto cols = f.jacobian(u0);
  std::vector<QVec> vs;
  for (const auto& c : null_space(gram(space.epsilon, cols))) vs.push_back(combine(c, cols, f.ambient_dim()));
  QSubspace rad = QSubspace::span(f.ambient_dim(), vs);
  return {rad, rad.dim()};
}

namespace detail {

template <class T>
Vec<T> value_vec(const Vec<T>& v) {
  return v;
}
inline QVec value_vec(const JVec& v) { return values(v); }

/// Greedily extend `fixed` by candidates that stay linearly independent (by value).
template <class T>
std::vector<Vec<T>> greedy_extend(const std::vector<Vec<T>>& fixed, const std::vector<Vec<T>>& candidates,
                                  std::size_t want, std::size_t dim) {
  std::vector<QVec> stack;
  for (const auto& v : fixed) stack.push_back(value_vec(v));
  std::vector<Vec<T>> chosen;
  for (const auto& c : candidates) {
    if (chosen.size() == want) break;
    stack.push_back(value_vec(c));
    if (rank(QMatrix::from_rows(dim, stack)) == stack.size()) {
      chosen.push_back(c);
    } else {
      stack.pop_back();
    }
  }
  return chosen;
}

inline bool nondegenerate(const std::vector<int>& eps, const std::vector<QVec>& basis) {
  if (basis.empty()) return true;
  return rank(gram(eps, basis)) == basis.size();
}

}  // namespace detail

/// Complement of the radical inside the tangent space with non-degenerate Gram.
inline QSubspace choose_screen(const QSubspace& tangent, const QSubspace& rad, const SignatureSpace& space,
                               const std::optional<std::vector<QVec>>& override_basis = std::nullopt) {
  if (!tangent.contains(rad)) fail(ErrorKind::ShapeError, "radical is not inside the tangent space");
  std::size_t want = tangent.dim() - rad.dim();
  if (override_basis) {
    QSubspace s = QSubspace::span(tangent.ambient_dim(), *override_basis);
    if (s.dim() != want || !tangent.contains(s) || rad.sum(s).dim() != tangent.dim())
      fail(ErrorKind::ScreenInvalid, "override is not a complement of the radical in the tangent space");
    if (!detail::nondegenerate(space.epsilon, s.basis()))
      fail(ErrorKind::ScreenInvalid, "override screen is degenerate");
    return s;
  }
  auto chosen = detail::greedy_extend(rad.basis(), tangent.basis(), want, tangent.ambient_dim());
  QSubspace s = QSubspace::span(tangent.ambient_dim(), chosen);
  if (!detail::nondegenerate(space.epsilon, s.basis()))
    fail(ErrorKind::InternalInconsistency, "complement of the radical is degenerate");
  return s;
}

/// Lightlike transversal sections N_i with g(N_i, xi_j) = delta_ij, g(N_i, N_j) = 0,
/// orthogonal to screen and screen transversal.
template <class T>
std::vector<Vec<T>> construct_ltr(const std::vector<int>& eps, const std::vector<Vec<T>>& xi,
                                  const std::vector<Vec<T>>& screen, const std::vector<Vec<T>>& str) {
  std::size_t n = eps.size();
  std::size_t r = xi.size();
  if (r == 0) return {};
  std::vector<Vec<T>> f = screen;
  f.insert(f.end(), str.begin(), str.end());
  auto fperp = orthogonal_complement(eps, f);
  auto v = detail::greedy_extend(xi, fperp, r, n);
  if (v.size() != r) fail(ErrorKind::LtrConstructionFailed, "no complement of the radical in the transversal plane");
  Matrix<T> pairing(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) pairing(i, j) = inner(eps, v[i], xi[j]);
  auto inv = inverse(pairing);
  if (!inv) fail(ErrorKind::LtrConstructionFailed, "pairing with the radical is singular");
  std::vector<Vec<T>> tilde;
  for (std::size_t i = 0; i < r; ++i) tilde.push_back(combine(inv->row(i), v, n));
  std::vector<Vec<T>> out;
  T half = T(QuadScalar(Rational(1, 2)));
  for (std::size_t i = 0; i < r; ++i) {
    Vec<T> ni = tilde[i];
    for (std::size_t j = 0; j < r; ++j) {
      T c = half * inner(eps, tilde[i], tilde[j]);
      if (!is_zero(c)) ni = ni - scale(c, xi[j]);
    }
    out.push_back(std::move(ni));
  }
  return out;
}

/// Orthogonal complement of J(S(TN)) inside S(TN^perp).
inline QSubspace mu_complement(const QSubspace& screen_transversal, const QSubspace& j_screen_image,
                               const SignatureSpace& space) {
  if (!screen_transversal.contains(j_screen_image))
    fail(ErrorKind::NotTransversalConfig, "J(screen) is not inside the screen transversal bundle");
  auto mu = orthogonal_within(space.epsilon, screen_transversal.basis(), j_screen_image.basis());
  return QSubspace::span(space.dim(), mu);
}

enum class ScreenPolicy {
  /// Structure-adapted when the radical pairs non-degenerately with J(radical), else greedy.
  Auto,
  Greedy,
};

struct FrameOptions {
  ScreenPolicy policy = ScreenPolicy::Auto;
  /// Screen basis in chart coordinates (coefficients of the coordinate fields).
  std::optional<std::vector<QVec>> screen_override;
};

/// Everything known about the submanifold at one chart point.
struct AdaptedFrame {
  QVec point;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<int> eps;
  Case kind = Case::NonDegenerate;
  bool structure_adapted = false;

  QSubspace tangent, rad, screen, screen_transversal, mu;
  bool mu_defined = false;

  // Stored bases (values at the point).
  std::vector<QVec> jacobian;      // coordinate fields pushed forward
  std::vector<QVec> xi;            // radical basis
  std::vector<QVec> xi_chart;      // same, chart coordinates
  std::vector<QVec> screen_basis;  // screen basis
  std::vector<QVec> screen_chart;  // same, chart coordinates
  std::vector<QVec> str;           // screen transversal basis
  std::vector<QVec> ltr;           // N_i, dual to xi

  // First-order extensions of the same bases.
  std::vector<JVec> jacobian_j, xi_j, xi_chart_j, screen_j, screen_chart_j, str_j, ltr_j;

  // Inverse of the column matrix [screen | xi | ltr | str].
  QMatrix split_inverse;
};

namespace detail {

inline std::vector<QVec> values_of(const std::vector<JVec>& v) {
  std::vector<QVec> r;
  for (const auto& x : v) r.push_back(values(x));
  return r;
}

inline std::vector<JVec> jets_of(const std::vector<QVec>& v) {
  std::vector<JVec> r;
  for (const auto& x : v) r.push_back(constant_jets(x));
  return r;
}

inline std::vector<QVec> unit_vectors(std::size_t m) {
  std::vector<QVec> e;
  for (std::size_t i = 0; i < m; ++i) {
    QVec v(m);
    v[i] = 1;
    e.push_back(v);
  }
  return e;
}

}  // namespace detail

inline AdaptedFrame build_frame(const PolynomialImmersion& f, const QVec& u0, const SignatureSpace& space,
                                const MetallicStructure* structure = nullptr, const FrameOptions& options = {}) {
  const std::size_t m = f.chart_dim();
  const std::size_t n = f.ambient_dim();
  if (space.dim() != n) fail(ErrorKind::ShapeError, "signature does not match ambient dimension");
  if (structure && structure->dim() != n) fail(ErrorKind::ShapeError, "structure does not match ambient dimension");
  const auto& eps = space.epsilon;

  AdaptedFrame fr;
  fr.point = u0;
  fr.m = m;
  fr.n = n;
  fr.eps = eps;

  fr.jacobian_j = f.jacobian_jets(u0);
  fr.jacobian = detail::values_of(fr.jacobian_j);
  if (rank(QMatrix::from_columns(n, fr.jacobian)) != m)
    fail(ErrorKind::ImmersionRankDrop, "Jacobian rank below chart dimension");

  // Radical: kernel of the induced Gram matrix.
  fr.xi_chart_j = null_space(gram(eps, fr.jacobian_j));
  fr.r = fr.xi_chart_j.size();
  for (const auto& c : fr.xi_chart_j) fr.xi_j.push_back(combine(c, fr.jacobian_j, n));

  auto tn_perp = orthogonal_complement(eps, fr.jacobian_j);

  std::vector<JVec> j_xi;
  if (structure && fr.r > 0 && options.policy == ScreenPolicy::Auto) {
    for (const auto& x : fr.xi_j) j_xi.push_back(structure->apply(x));
    QMatrix pairing(fr.r, fr.r);
    for (std::size_t i = 0; i < fr.r; ++i)
      for (std::size_t j = 0; j < fr.r; ++j) pairing(i, j) = space.g(values(fr.xi_j[i]), values(j_xi[j]));
    fr.structure_adapted = rank(pairing) == fr.r;
  }

  // Screen, in chart coordinates.
  const std::size_t s_dim = m - fr.r;
  if (options.screen_override) {
    const auto& ov = *options.screen_override;
    for (const auto& c : ov)
      if (c.size() != m) fail(ErrorKind::ScreenInvalid, "override vectors must have chart dimension");
    std::vector<QVec> stack = detail::values_of(fr.xi_chart_j);
    stack.insert(stack.end(), ov.begin(), ov.end());
    if (ov.size() != s_dim || rank(QMatrix::from_rows(m, stack)) != m)
      fail(ErrorKind::ScreenInvalid, "override is not a complement of the radical in the tangent space");
    fr.screen_chart_j = detail::jets_of(ov);
  } else if (fr.structure_adapted) {
    // Tangent vectors orthogonal to J(radical).
    JMatrix mtx(fr.r, m);
    for (std::size_t j = 0; j < fr.r; ++j)
      for (std::size_t k = 0; k < m; ++k) mtx(j, k) = inner(eps, j_xi[j], fr.jacobian_j[k]);
    fr.screen_chart_j = null_space(mtx);
    if (fr.screen_chart_j.size() != s_dim) fail(ErrorKind::InternalInconsistency, "adapted screen has wrong rank");
  } else {
    auto unit = detail::jets_of(detail::unit_vectors(m));
    fr.screen_chart_j = detail::greedy_extend(fr.xi_chart_j, unit, s_dim, m);
  }
  for (const auto& c : fr.screen_chart_j) fr.screen_j.push_back(combine(c, fr.jacobian_j, n));

  // Screen transversal: complement of the radical in TN^perp.
  const std::size_t t_dim = n - m - fr.r;
  if (fr.structure_adapted) {
    fr.str_j = orthogonal_within(eps, tn_perp, j_xi);
    if (fr.str_j.size() != t_dim) fail(ErrorKind::InternalInconsistency, "adapted screen transversal has wrong rank");
  } else {
    fr.str_j = detail::greedy_extend(fr.xi_j, tn_perp, t_dim, n);
  }

  // For r >= 2 the null complement is not unique; when J(radical) is itself an
  // admissible choice (null, orthogonal to screen and screen transversal), use it.
  bool j_ltr = fr.structure_adapted;
  for (std::size_t i = 0; j_ltr && i < fr.r; ++i) {
    for (std::size_t j = 0; j_ltr && j < fr.r; ++j) j_ltr = is_zero(inner(eps, j_xi[i], j_xi[j]));
    for (const auto& v : fr.screen_j) j_ltr = j_ltr && is_zero(inner(eps, j_xi[i], v));
    for (const auto& v : fr.str_j) j_ltr = j_ltr && is_zero(inner(eps, j_xi[i], v));
  }
  if (j_ltr) {
    JMatrix pairing(fr.r, fr.r);
    for (std::size_t i = 0; i < fr.r; ++i)
      for (std::size_t k = 0; k < fr.r; ++k) pairing(i, k) = inner(eps, j_xi[i], fr.xi_j[k]);
    auto inv = inverse(pairing);
    if (!inv) fail(ErrorKind::LtrConstructionFailed, "J(radical) pairing is singular");
    for (std::size_t i = 0; i < fr.r; ++i) fr.ltr_j.push_back(combine(inv->row(i), j_xi, n));
  } else {
    fr.ltr_j = construct_ltr(eps, fr.xi_j, fr.screen_j, fr.str_j);
  }

  fr.xi = detail::values_of(fr.xi_j);
  fr.xi_chart = detail::values_of(fr.xi_chart_j);
  fr.screen_basis = detail::values_of(fr.screen_j);
  fr.screen_chart = detail::values_of(fr.screen_chart_j);
  fr.str = detail::values_of(fr.str_j);
  fr.ltr = detail::values_of(fr.ltr_j);

  if (!detail::nondegenerate(eps, fr.screen_basis)) {
    if (options.screen_override) fail(ErrorKind::ScreenInvalid, "override screen is degenerate");
    fail(ErrorKind::InternalInconsistency, "screen is degenerate");
  }
  if (!detail::nondegenerate(eps, fr.str))
    fail(ErrorKind::InternalInconsistency, "screen transversal bundle is degenerate");

  fr.tangent = QSubspace::span(n, fr.jacobian);
  fr.rad = QSubspace::span(n, fr.xi);
  fr.screen = QSubspace::span(n, fr.screen_basis);
  fr.screen_transversal = QSubspace::span(n, fr.str);
  fr.kind = classify_case(fr.r, m, n - m);

  std::vector<QVec> all = fr.screen_basis;
  all.insert(all.end(), fr.xi.begin(), fr.xi.end());
  all.insert(all.end(), fr.ltr.begin(), fr.ltr.end());
  all.insert(all.end(), fr.str.begin(), fr.str.end());
  auto inv = inverse(QMatrix::from_columns(n, all));
  if (all.size() != n || !inv) fail(ErrorKind::FrameIncomplete, "frame bases do not span the ambient space");
  fr.split_inverse = std::move(*inv);

  if (structure) {
    std::vector<QVec> js;
    for (const auto& s : fr.screen_basis) js.push_back(structure->apply(s));
    QSubspace jscreen = QSubspace::span(n, js);
    if (fr.screen_transversal.contains(jscreen)) {
      fr.mu = mu_complement(fr.screen_transversal, jscreen, space);
      fr.mu_defined = true;
    }
  }
  return fr;
}

}  // namespace lightlike
