#pragma once

// Random scenes that satisfy a definition predicate to first order, with
// optional extra constraints that force chosen oracles to hold, and the
// randomized audit of 1-lightlike configurations.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lightlike/ambient.hpp"
#include "lightlike/classifier.hpp"
#include "lightlike/induced.hpp"
#include "lightlike/random_scene.hpp"
#include "lightlike/submanifold.hpp"

namespace lightlike {

enum class OracleKind { ScreenBracket, RadicalBracket, ScreenGeodesic, RadicalGeodesic, Metric };

inline const std::vector<OracleKind>& all_oracles() {
  static const std::vector<OracleKind> all = {OracleKind::ScreenBracket, OracleKind::RadicalBracket,
                                              OracleKind::ScreenGeodesic, OracleKind::RadicalGeodesic,
                                              OracleKind::Metric};
  return all;
}

inline Residuals evaluate_oracle(const Classifier& c, OracleKind k) {
  switch (k) {
    case OracleKind::ScreenBracket: return c.screen_bracket_oracle();
    case OracleKind::RadicalBracket: return c.radical_bracket_oracle();
    case OracleKind::ScreenGeodesic: return c.screen_geodesic_oracle();
    case OracleKind::RadicalGeodesic: return c.radical_geodesic_oracle();
    case OracleKind::Metric: return c.metric_oracle();
  }
  return {};
}

struct StructuredScene {
  MetallicParams params;
  Mode mode = Mode::RadicalTransversal;
  std::vector<int> eps;
  MetallicStructure structure{MetallicParams{0, 2}, QMatrix::identity(1)};
  PolynomialImmersion immersion{1, {Polynomial(1), Polynomial(1)}};
  QVec point;
  std::size_t r = 0;
  std::vector<OracleKind> forced;
};

namespace detail {

inline QVec flatten_derivatives(const std::vector<JVec>& coords, std::size_t m,
                                const std::vector<std::pair<std::size_t, std::size_t>>& keep) {
  QVec out;
  for (std::size_t v = 0; v < coords.size(); ++v) {
    const auto [lo, hi] = keep[v];
    for (std::size_t k = 0; k < coords[v].size(); ++k) {
      if (k >= lo && k < hi) continue;
      for (std::size_t d = 0; d < m; ++d) out.push_back(coords[v][k].d(d));
    }
  }
  return out;
}

inline QVec flatten(const Residuals& rs) {
  QVec out;
  for (const auto& r : rs) out.insert(out.end(), r.value.begin(), r.value.end());
  return out;
}

}  // namespace detail

/// Tangent space spanned by r null pairs and m - r screen directions that
/// satisfy the mode's definition exactly at the point; p must be 0.
inline StructuredScene random_structured_scene(Rng& rng, const MetallicParams& params, Mode mode, std::size_t n,
                                               std::size_t m, std::size_t r, const std::vector<OracleKind>& forced = {}) {
  if (params.p != 0) fail(ErrorKind::ParamError, "structured scenes exist only for p = 0");
  const std::size_t s = m - r;
  const std::size_t used = 2 * r + (mode == Mode::RadicalTransversal ? s : 2 * s);
  if (r == 0 || m < r || used > n || n < m + r) fail(ErrorKind::ParamError, "dimensions do not fit the mode");

  std::bernoulli_distribution coin(0.5);
  std::vector<int> eps(n, 1);
  std::vector<Branch> branch(n, Branch::Sigma);
  auto other = [](Branch b) { return b == Branch::Sigma ? Branch::PMinusSigma : Branch::Sigma; };
  std::vector<QVec> xi, screen;
  std::size_t axis = 0;
  for (std::size_t k = 0; k < r; ++k, axis += 2) {
    eps[axis] = -1;
    branch[axis] = coin(rng) ? Branch::Sigma : Branch::PMinusSigma;
    branch[axis + 1] = other(branch[axis]);
    QVec v(n);
    v[axis] = 1;
    v[axis + 1] = 1;
    xi.push_back(v);
  }
  for (std::size_t k = 0; k < s; ++k) {
    QVec v(n);
    int e = coin(rng) ? -1 : 1;
    if (mode == Mode::RadicalTransversal) {
      eps[axis] = e;
      branch[axis] = coin(rng) ? Branch::Sigma : Branch::PMinusSigma;
      v[axis++] = 1;
    } else {
      eps[axis] = eps[axis + 1] = e;
      branch[axis] = coin(rng) ? Branch::Sigma : Branch::PMinusSigma;
      branch[axis + 1] = other(branch[axis]);
      v[axis] = 1;
      v[axis + 1] = 1;
      axis += 2;
    }
    screen.push_back(v);
  }
  for (; axis < n; ++axis) {
    eps[axis] = coin(rng) ? -1 : 1;
    branch[axis] = coin(rng) ? Branch::Sigma : Branch::PMinusSigma;
  }

  // Isometries inside eigenspaces keep J; a general isometry then moves J too.
  std::vector<int> blocks(n);
  for (std::size_t a = 0; a < n; ++a) blocks[a] = branch[a] == Branch::Sigma ? 0 : 1;
  QMatrix keep = random_isometry(rng, eps, n, blocks);
  QMatrix move = random_isometry(rng, eps, n);
  QMatrix g = move * keep;
  QMatrix jd = diag_metallic(params, branch).matrix();
  QMatrix j = move * jd * *inverse(move);
  for (auto& v : xi) v = g * v;
  for (auto& v : screen) v = g * v;

  std::vector<QVec> base = xi;
  base.insert(base.end(), screen.begin(), screen.end());
  QMatrix mix = random_invertible(rng, params, m);
  std::vector<QVec> columns;
  for (std::size_t i = 0; i < m; ++i) columns.push_back(combine(mix.col(i), base, n));

  StructuredScene out;
  out.params = params;
  out.mode = mode;
  out.eps = eps;
  out.structure = MetallicStructure(params, j);
  out.point = random_point(rng, m);
  out.r = r;
  out.forced = forced;

  HessianSpace hs(n, m);
  SignatureSpace space(eps);
  const MetallicStructure& st = out.structure;
  auto with = [&](const QVec& h) {
    PolynomialImmersion f = quadratic_immersion(columns, hs, h, out.point);
    AdaptedFrame fr = build_frame(f, out.point, space, &st);
    return InducedGeometry(std::move(f), std::move(fr));
  };

  // One linear map collects the first-order definition constraints (J xi stays
  // in ltr, J s stays in the screen or the screen transversal bundle) and the
  // forced oracles; all of them are linear in the Hessian.
  auto basis = refine(constant_rank_hessians(eps, columns), [&](const QVec& h) {
    InducedGeometry geo = with(h);
    const auto& fr = geo.frame();
    std::vector<JVec> coords;
    std::vector<std::pair<std::size_t, std::size_t>> keep_block;
    for (const auto& x : fr.xi_j) {
      coords.push_back(geo.coords_j(st.apply(x)));
      keep_block.emplace_back(s + r, s + 2 * r);
    }
    for (const auto& x : fr.screen_j) {
      coords.push_back(geo.coords_j(st.apply(x)));
      keep_block.push_back(mode == Mode::RadicalTransversal ? std::pair<std::size_t, std::size_t>{0, s}
                                                            : std::pair<std::size_t, std::size_t>{s + 2 * r, n});
    }
    QVec out = detail::flatten_derivatives(coords, m, keep_block);
    Classifier cl(geo, st);
    for (OracleKind k : forced) {
      QVec o = detail::flatten(evaluate_oracle(cl, k));
      out.insert(out.end(), o.begin(), o.end());
    }
    return out;
  });

  QVec h = random_combination(rng, params, basis, hs.size());
  out.immersion = quadratic_immersion(columns, hs, h, out.point);
  return out;
}

// ---- nonexistence audit ----

/// Random candidates: a compatible metallic J and a null vector, half of them
/// placed on opposite-sign axis pairs of J's eigenbasis.
inline NonexistenceCandidate random_candidate(Rng& rng, const MetallicParams& params) {
  std::uniform_int_distribution<std::size_t> dim(3, 6);
  std::bernoulli_distribution coin(0.5);
  const std::size_t n = dim(rng);
  std::vector<int> eps(n);
  std::vector<Branch> branch(n);
  for (std::size_t a = 0; a < n; ++a) {
    eps[a] = coin(rng) ? -1 : 1;
    branch[a] = coin(rng) ? Branch::Sigma : Branch::PMinusSigma;
  }
  eps[0] = -1;
  eps[1] = 1;
  QMatrix g = random_isometry(rng, eps, 2 * n);
  QMatrix j = g * diag_metallic(params, branch).matrix() * *inverse(g);
  QVec xi(n);
  xi[0] = 1;
  xi[1] = 1;
  if (coin(rng)) {
    xi = g * xi;
  } else {
    xi = random_isometry(rng, eps, 2 * n) * xi;
  }
  return NonexistenceCandidate{eps, j, xi};
}

inline CheckResult nonexistence_audit(const MetallicParams& params, Mode kind, std::uint64_t seed,
                                      std::size_t count = 200) {
  params.validate();
  CheckResult c;
  c.name = "audit-nonexistence";
  c.reference = kind == Mode::RadicalTransversal ? "no 1-radical transversal lightlike submanifold"
                                                 : "no 1-lightlike transversal lightlike submanifold; dim Rad >= 2";
  QuadScalar sym = nonexistence_symbolic_residual(params);
  c.notes.push_back("symbolic residual g(Jxi,Jxi) - p g(Jxi,xi) - q g(xi,xi) under the constraints: " + format(sym));

  Rng rng(seed);
  std::size_t hits = 0;
  std::string first_hit;
  for (std::size_t t = 0; t < count; ++t) {
    NonexistenceCandidate cand = random_candidate(rng, params);
    auto q = quadratic_identity_residual(cand.j, SignatureSpace(cand.eps), params);
    for (std::size_t a = 0; a < q.rows(); ++a)
      for (std::size_t b = 0; b < q.cols(); ++b)
        if (!q(a, b).is_zero()) fail(ErrorKind::InternalInconsistency, "candidate structure is not compatible");
    if (satisfies_one_lightlike(cand)) {
      if (hits++ == 0) first_hit = "candidate " + std::to_string(t) + ": xi = " + format(cand.xi);
    }
  }
  c.notes.push_back(std::to_string(count) + " candidates, " + std::to_string(hits) + " satisfy all constraints");

  if (sym.is_zero()) {
    // p = 0: no contradiction; exhibit an explicit configuration.
    MetallicStructure j = diag_metallic(params, {Branch::PMinusSigma, Branch::Sigma, Branch::Sigma, Branch::PMinusSigma});
    SignatureSpace space({-1, 1, 1, 1});
    const auto w = one_lightlike_witnesses()[kind == Mode::RadicalTransversal ? 0 : 1];
    PolynomialImmersion f = linear_immersion(w.second);
    QVec u0(f.chart_dim());
    InducedGeometry geo(f, build_frame(f, u0, space, &j));
    Classifier cl(geo, j);
    bool ok = geo.frame().r == 1 && cl.status(kind).holds();
    c.verdict = Outcome::NotApplicable;
    c.witness = std::string("p = 0 admits a 1-lightlike ") + w.first + " example in R^4_1 with J = diag(-s, s, s, -s), tangent " +
                format(w.second[0]) + ", " + format(w.second[1]) + (ok ? " (verified)" : " (verification failed)");
    if (!ok) fail(ErrorKind::InternalInconsistency, "p = 0 witness does not satisfy the definition");
    if (!first_hit.empty()) c.notes.push_back("first satisfying " + first_hit);
    return c;
  }
  c.verdict = hits == 0 ? Outcome::Holds : Outcome::Fails;
  c.must_hold = true;
  if (hits) c.witness = first_hit;
  return c;
}

}  // namespace lightlike
