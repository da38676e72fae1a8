#pragma once

// Gauss-Weingarten data of a polynomial immersion at one point.
//
// The ambient space is flat, so the ambient connection is the
// componentwise directional derivative. Frame sections (xi, N, Z, P U)
// are taken as the first-order jets produced by build_frame, so their
// derivatives at the point are exact.

#include <cstddef>
#include <utility>
#include <vector>

#include "lightlike/errors.hpp"
#include "lightlike/jet.hpp"
#include "lightlike/linalg.hpp"
#include "lightlike/polynomial.hpp"
#include "lightlike/submanifold.hpp"

namespace lightlike {

/// Sum of coeffs[i](u) d/du_i.
struct TangentField {
  std::vector<Polynomial> coeffs;

  std::size_t chart_dim() const { return coeffs.size(); }

  static TangentField coordinate(std::size_t m, std::size_t i) {
    TangentField x;
    for (std::size_t k = 0; k < m; ++k) x.coeffs.emplace_back(m, QuadScalar(k == i ? 1 : 0));
    return x;
  }

  static TangentField constant(const QVec& c) {
    TangentField x;
    for (const auto& v : c) x.coeffs.emplace_back(c.size(), v);
    return x;
  }

  QVec at(const QVec& u) const { return evaluate(coeffs, u); }

  friend bool operator==(const TangentField& a, const TangentField& b) { return a.coeffs == b.coeffs; }
};

inline TangentField lie_bracket(const TangentField& x, const TangentField& y) {
  const std::size_t m = x.chart_dim();
  if (y.chart_dim() != m) fail(ErrorKind::ShapeError, "fields live on different charts");
  TangentField r;
  for (std::size_t i = 0; i < m; ++i) {
    Polynomial c(m);
    for (std::size_t j = 0; j < m; ++j) {
      c += x.coeffs[j] * y.coeffs[i].derivative(j);
      c -= y.coeffs[j] * x.coeffs[i].derivative(j);
    }
    r.coeffs.push_back(std::move(c));
  }
  return r;
}

/// D_W of the pushforward of U, by direct polynomial differentiation.
inline QVec ambient_derivative(const PolynomialImmersion& f, const TangentField& w, const TangentField& u,
                               const QVec& u0) {
  const std::size_t m = f.chart_dim();
  if (w.chart_dim() != m || u.chart_dim() != m) fail(ErrorKind::ShapeError, "field has wrong chart dimension");
  QVec out;
  for (const auto& comp : f.components()) {
    Polynomial pushed(m);
    for (std::size_t i = 0; i < m; ++i) pushed += u.coeffs[i] * comp.derivative(i);
    Polynomial d(m);
    for (std::size_t k = 0; k < m; ++k) d += w.coeffs[k] * pushed.derivative(k);
    out.push_back(d.evaluate(u0));
  }
  return out;
}

/// Coefficients of an ambient vector in the frame [screen | rad | ltr | str].
struct FrameParts {
  QVec screen, rad, ltr, str;
};

struct GaussSplit {
  QVec ambient;  // D_W U
  QVec nabla;    // tangent part
  QVec hl;       // ltr part
  QVec hs;       // screen transversal part
};

struct WeingartenSplit {
  QVec shape;       // A W (tangent), the negated tangent part
  QVec connection;  // part in the same transversal bundle
  QVec cross;       // part in the other transversal bundle
};

struct ScreenSplit {
  QVec screen_part;  // nabla* PU, or -A*_xi W
  QVec rad_part;     // h*(W, PU), or nabla*t xi
};

class InducedGeometry {
 public:
  InducedGeometry(PolynomialImmersion f, AdaptedFrame frame) : f_(std::move(f)), fr_(std::move(frame)) {
    if (fr_.m != f_.chart_dim() || fr_.n != f_.ambient_dim()) fail(ErrorKind::ShapeError, "frame does not match immersion");
    s_ = fr_.m - fr_.r;
    t_ = fr_.n - fr_.m - fr_.r;
    std::vector<JVec> cols = fr_.screen_j;
    cols.insert(cols.end(), fr_.xi_j.begin(), fr_.xi_j.end());
    cols.insert(cols.end(), fr_.ltr_j.begin(), fr_.ltr_j.end());
    cols.insert(cols.end(), fr_.str_j.begin(), fr_.str_j.end());
    auto inv = inverse(JMatrix::from_columns(fr_.n, cols));
    if (cols.size() != fr_.n || !inv) fail(ErrorKind::FrameIncomplete, "frame bases do not span the ambient space");
    split_j_ = std::move(*inv);
  }

  const AdaptedFrame& frame() const { return fr_; }
  const PolynomialImmersion& immersion() const { return f_; }
  const std::vector<int>& eps() const { return fr_.eps; }
  QuadScalar g(const QVec& a, const QVec& b) const { return inner(fr_.eps, a, b); }

  // ---- value-level decomposition ----

  FrameParts parts(const QVec& v) const {
    if (v.size() != fr_.n) fail(ErrorKind::ShapeError, "ambient vector has wrong dimension");
    QVec c = fr_.split_inverse * v;
    FrameParts p;
    p.screen.assign(c.begin(), c.begin() + s_);
    p.rad.assign(c.begin() + s_, c.begin() + s_ + fr_.r);
    p.ltr.assign(c.begin() + s_ + fr_.r, c.begin() + s_ + 2 * fr_.r);
    p.str.assign(c.begin() + s_ + 2 * fr_.r, c.end());
    return p;
  }

  QVec screen_vec(const QVec& c) const { return combine(c, fr_.screen_basis, fr_.n); }
  QVec rad_vec(const QVec& c) const { return combine(c, fr_.xi, fr_.n); }
  QVec ltr_vec(const QVec& c) const { return combine(c, fr_.ltr, fr_.n); }
  QVec str_vec(const QVec& c) const { return combine(c, fr_.str, fr_.n); }

  QVec screen_part(const QVec& v) const { return screen_vec(parts(v).screen); }
  QVec rad_part(const QVec& v) const { return rad_vec(parts(v).rad); }
  QVec ltr_part(const QVec& v) const { return ltr_vec(parts(v).ltr); }
  QVec str_part(const QVec& v) const { return str_vec(parts(v).str); }
  QVec tangent_part(const QVec& v) const { return screen_part(v) + rad_part(v); }
  QVec transversal_part(const QVec& v) const { return ltr_part(v) + str_part(v); }

  /// Chart coordinates of a tangent vector.
  QVec chart_of(const QVec& tangent) const {
    FrameParts p = parts(tangent);
    if (!is_zero_vec(p.ltr) || !is_zero_vec(p.str)) fail(ErrorKind::NotInSpan, "vector is not tangent");
    return combine(p.screen, fr_.screen_chart, fr_.m) + combine(p.rad, fr_.xi_chart, fr_.m);
  }

  QVec push_vec(const QVec& chart) const { return combine(chart, fr_.jacobian, fr_.n); }

  // ---- first-order sections ----

  /// Pushforward of a tangent field, as a jet at the point.
  JVec push(const TangentField& x) const {
    check(x);
    JVec r(fr_.n);
    for (std::size_t i = 0; i < fr_.m; ++i) {
      QJet c = x.coeffs[i].jet(fr_.point);
      if (c.is_zero()) continue;
      for (std::size_t a = 0; a < fr_.n; ++a) r[a] += c * fr_.jacobian_j[i][a];
    }
    return r;
  }

  /// Screen projection P of a tangent field, as a jet.
  JVec screen_projection(const TangentField& x) const {
    JVec c = split_j_ * push(x);
    JVec r(fr_.n);
    for (std::size_t a = 0; a < s_; ++a)
      for (std::size_t b = 0; b < fr_.n; ++b) r[b] += c[a] * fr_.screen_j[a][b];
    return r;
  }

  JVec xi_section(const QVec& c) const { return section(c, fr_.xi_j); }
  JVec ltr_section(const QVec& c) const { return section(c, fr_.ltr_j); }
  JVec str_section(const QVec& c) const { return section(c, fr_.str_j); }

  /// Coefficients of a section in the frame [screen | rad | ltr | str], to first order.
  JVec coords_j(const JVec& x) const { return split_j_ * x; }

  /// Derivative of a section along the chart vector w.
  QVec derivative(const JVec& x, const QVec& w) const { return directional(x, w); }

  // ---- Gauss and Weingarten formulas ----

  GaussSplit gauss(const TangentField& w, const TangentField& u) const {
    return gauss_split(derivative(push(u), w.at(fr_.point)));
  }

  GaussSplit gauss_split(const QVec& d) const {
    FrameParts p = parts(d);
    return GaussSplit{d, screen_vec(p.screen) + rad_vec(p.rad), ltr_vec(p.ltr), str_vec(p.str)};
  }

  /// Eq-(10) split for N = sum c_i N_i.
  WeingartenSplit weingarten_ltr(const QVec& w, const QVec& c) const {
    FrameParts p = parts(derivative(ltr_section(c), w));
    return WeingartenSplit{-(screen_vec(p.screen) + rad_vec(p.rad)), ltr_vec(p.ltr), str_vec(p.str)};
  }

  /// Eq-(11) split for Z = sum c_a Z_a.
  WeingartenSplit weingarten_str(const QVec& w, const QVec& c) const {
    FrameParts p = parts(derivative(str_section(c), w));
    return WeingartenSplit{-(screen_vec(p.screen) + rad_vec(p.rad)), str_vec(p.str), ltr_vec(p.ltr)};
  }

  /// Eq-(14) split of nabla_W PU.
  ScreenSplit screen_split_pu(const TangentField& w, const TangentField& u) const {
    FrameParts p = parts(derivative(screen_projection(u), w.at(fr_.point)));
    return ScreenSplit{screen_vec(p.screen), rad_vec(p.rad)};
  }

  /// Eq-(15) split of nabla_W xi for xi = sum c_i xi_i; screen_part is -A*_xi W.
  ScreenSplit screen_split_xi(const QVec& w, const QVec& c) const {
    FrameParts p = parts(derivative(xi_section(c), w));
    return ScreenSplit{screen_vec(p.screen), rad_vec(p.rad)};
  }

  // ---- tensorial quantities on value-level arguments ----
  // Tangent arguments are chart vectors; transversal arguments are ambient vectors.

  QVec second_derivative(const QVec& w, const QVec& x) const { return f_.hessian(fr_.point, w, x); }
  QVec h(const QVec& w, const QVec& x) const { return transversal_part(second_derivative(w, x)); }
  QVec hl(const QVec& w, const QVec& x) const { return ltr_part(second_derivative(w, x)); }
  QVec hs(const QVec& w, const QVec& x) const { return str_part(second_derivative(w, x)); }

  /// Shape operator A_V W for V in ltr + str; tangent ambient vector.
  QVec shape(const QVec& w, const QVec& v) const {
    FrameParts p = parts(v);
    if (!is_zero_vec(p.screen) || !is_zero_vec(p.rad)) fail(ErrorKind::NotInSpan, "shape operator needs a transversal vector");
    QVec r(fr_.n);
    if (fr_.r) r = r + weingarten_ltr(w, p.ltr).shape;
    if (t_) r = r + weingarten_str(w, p.str).shape;
    return r;
  }

  /// Transversal part of D_W V for V in ltr + str (nabla^t V).
  QVec nabla_t(const QVec& w, const QVec& v) const {
    FrameParts p = parts(v);
    if (!is_zero_vec(p.screen) || !is_zero_vec(p.rad)) fail(ErrorKind::NotInSpan, "expected a transversal vector");
    QVec r(fr_.n);
    if (fr_.r) {
      auto s = weingarten_ltr(w, p.ltr);
      r = r + s.connection + s.cross;
    }
    if (t_) {
      auto s = weingarten_str(w, p.str);
      r = r + s.connection + s.cross;
    }
    return r;
  }

  QVec ds(const QVec& w, const QVec& n) const { return str_part(nabla_t(w, ltr_only(n))); }
  QVec dl(const QVec& w, const QVec& z) const { return ltr_part(nabla_t(w, str_only(z))); }

  /// h*(W, PX), rad-valued.
  QVec h_star(const QVec& w, const QVec& x) const {
    return screen_split_pu(TangentField::constant(w), TangentField::constant(x)).rad_part;
  }

  /// A*_xi W, screen-valued.
  QVec shape_star(const QVec& w, const QVec& xi) const {
    FrameParts p = parts(xi);
    if (!is_zero_vec(p.screen) || !is_zero_vec(p.ltr) || !is_zero_vec(p.str))
      fail(ErrorKind::NotInSpan, "expected a radical vector");
    return -screen_split_xi(w, p.rad).screen_part;
  }

  std::size_t screen_dim() const { return s_; }
  std::size_t str_dim() const { return t_; }

 private:
  void check(const TangentField& x) const {
    if (x.chart_dim() != fr_.m) fail(ErrorKind::ShapeError, "field has wrong chart dimension");
  }

  JVec section(const QVec& c, const std::vector<JVec>& basis) const {
    if (c.size() != basis.size()) fail(ErrorKind::ShapeError, "section coefficients have wrong length");
    JVec r(fr_.n);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero())
        for (std::size_t a = 0; a < fr_.n; ++a) r[a] += QJet(c[i]) * basis[i][a];
    return r;
  }

  QVec ltr_only(const QVec& v) const {
    FrameParts p = parts(v);
    if (!is_zero_vec(p.screen) || !is_zero_vec(p.rad) || !is_zero_vec(p.str))
      fail(ErrorKind::NotInSpan, "expected a lightlike transversal vector");
    return v;
  }
  QVec str_only(const QVec& v) const {
    FrameParts p = parts(v);
    if (!is_zero_vec(p.screen) || !is_zero_vec(p.rad) || !is_zero_vec(p.ltr))
      fail(ErrorKind::NotInSpan, "expected a screen transversal vector");
    return v;
  }

  PolynomialImmersion f_;
  AdaptedFrame fr_;
  std::size_t s_ = 0, t_ = 0;
  JMatrix split_j_;
};

// ---- identity residuals (all exact; zero when the identity holds) ----

struct MetricDeviation {
  QuadScalar direct;  // W g(U,V) - g(nabla_W U, V) - g(U, nabla_W V)
  QuadScalar via_hl;  // g(h^l(W,U), V) + g(h^l(W,V), U)
};

inline MetricDeviation metric_deviation(const InducedGeometry& geo, const TangentField& w, const TangentField& u,
                                        const TangentField& v) {
  const QVec& u0 = geo.frame().point;
  QVec wv = w.at(u0);
  JVec pu = geo.push(u), pv = geo.push(v);
  QJet guv = inner(geo.eps(), pu, pv);
  auto gu = geo.gauss(w, u);
  auto gv = geo.gauss(w, v);
  QVec uu = values(pu), vv = values(pv);
  MetricDeviation d;
  d.direct = directional(guv, wv) - geo.g(gu.nabla, vv) - geo.g(uu, gv.nabla);
  d.via_hl = geo.g(gu.hl, vv) + geo.g(gv.hl, uu);
  return d;
}

/// (nabla*_W g)(PU, PV); zero because nabla* is metric on the screen.
inline QuadScalar screen_metric_deviation(const InducedGeometry& geo, const TangentField& w, const TangentField& u,
                                          const TangentField& v) {
  const QVec& u0 = geo.frame().point;
  QVec wv = w.at(u0);
  JVec pu = geo.screen_projection(u), pv = geo.screen_projection(v);
  QJet g = inner(geo.eps(), pu, pv);
  auto su = geo.screen_split_pu(w, u);
  auto sv = geo.screen_split_pu(w, v);
  return directional(g, wv) - geo.g(su.screen_part, values(pv)) - geo.g(values(pu), sv.screen_part);
}

/// Eq (12): g(h^s(W,U), Z) + g(U, D^l(W,Z)) - g(A_Z W, U).
inline QuadScalar residual_12(const InducedGeometry& geo, const QVec& w, const QVec& u, const QVec& z) {
  QVec uu = geo.push_vec(u);
  return geo.g(geo.hs(w, u), z) + geo.g(uu, geo.dl(w, z)) - geo.g(geo.shape(w, z), uu);
}

/// Eq (13): g(D^s(W,N), Z) - g(N, A_Z W).
inline QuadScalar residual_13(const InducedGeometry& geo, const QVec& w, const QVec& n, const QVec& z) {
  return geo.g(geo.ds(w, n), z) - geo.g(n, geo.shape(w, z));
}

/// Eq (16): g(h^l(W,PU), xi) - g(A*_xi W, PU).
inline QuadScalar residual_16(const InducedGeometry& geo, const QVec& w, const QVec& u, const QVec& xi) {
  QVec pu = geo.screen_part(geo.push_vec(u));
  QVec pu_chart = geo.chart_of(pu);
  return geo.g(geo.hl(w, pu_chart), xi) - geo.g(geo.shape_star(w, xi), pu);
}

/// g(h*(W,PU), N) - g(A_N W, PU): the screen-side pairing with N.
inline QuadScalar residual_17(const InducedGeometry& geo, const QVec& w, const QVec& u, const QVec& n) {
  QVec pu = geo.screen_part(geo.push_vec(u));
  return geo.g(geo.h_star(w, u), n) - geo.g(geo.shape(w, n), pu);
}

/// The same pairing with h^s in place of h*; its left side is always zero.
inline QuadScalar residual_17_hs(const InducedGeometry& geo, const QVec& w, const QVec& u, const QVec& n) {
  QVec pu = geo.screen_part(geo.push_vec(u));
  QVec pu_chart = geo.chart_of(pu);
  return geo.g(geo.hs(w, pu_chart), n) - geo.g(geo.shape(w, n), pu);
}

/// Eq (18), first part: g(h^l(W, xi), xi).
inline QuadScalar residual_18(const InducedGeometry& geo, const QVec& w, const QVec& xi) {
  return geo.g(geo.hl(w, geo.chart_of(xi)), xi);
}

/// Eq (18), second part: A*_xi xi.
inline QVec residual_18_shape(const InducedGeometry& geo, const QVec& xi) {
  return geo.shape_star(geo.chart_of(xi), xi);
}

}  // namespace lightlike
