#include <gtest/gtest.h>

#include "lightlike/induced.hpp"
#include "lightlike/random_scene.hpp"

using namespace lightlike;

namespace {

const MetallicParams kGolden{1, 1};

TangentField field(std::size_t m, const std::vector<std::string>& comps, const MetallicParams& params = kGolden) {
  TangentField x;
  for (const auto& c : comps) x.coeffs.push_back(parse_polynomial(c, m, params));
  return x;
}

PolynomialImmersion immersion(std::size_t m, const std::vector<std::string>& comps,
                              const MetallicParams& params = kGolden) {
  std::vector<Polynomial> ps;
  for (const auto& c : comps) ps.push_back(parse_polynomial(c, m, params));
  return PolynomialImmersion(m, ps);
}

TangentField random_field(Rng& rng, const MetallicParams& params, std::size_t m, unsigned deg = 1) {
  return TangentField{random_polynomials(rng, params, m, m, deg)};
}

QVec random_vec(Rng& rng, const MetallicParams& params, std::size_t k) {
  QVec v(k);
  for (auto& x : v) x = random_scalar(rng, params, 2, 2);
  return v;
}

}  // namespace

TEST(LieBracket, Examples) {
  auto d1 = TangentField::coordinate(2, 0), d2 = TangentField::coordinate(2, 1);
  auto zero = lie_bracket(d1, d2);
  for (const auto& c : zero.coeffs) EXPECT_TRUE(c.is_zero());
  auto x = field(1, {"u1"});
  auto b = lie_bracket(x, TangentField::coordinate(1, 0));
  EXPECT_EQ(b, field(1, {"-1"}));
}

TEST(LieBracket, Antisymmetric) {
  Rng rng(301);
  for (int t = 0; t < 30; ++t) {
    auto x = random_field(rng, kGolden, 3, 2), y = random_field(rng, kGolden, 3, 2);
    auto xy = lie_bracket(x, y), yx = lie_bracket(y, x);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE((xy.coeffs[i] + yx.coeffs[i]).is_zero());
  }
}

TEST(AmbientDerivative, Examples) {
  auto lin = immersion(2, {"u1", "u2", "u1 + 2 u2"});
  auto d = ambient_derivative(lin, TangentField::coordinate(2, 0), TangentField::coordinate(2, 1), QVec(2));
  EXPECT_TRUE(is_zero_vec(d));

  auto par = immersion(1, {"u1", "u1^2"});
  auto du = TangentField::coordinate(1, 0);
  EXPECT_EQ(ambient_derivative(par, du, du, QVec(1)), (QVec{QuadScalar(0), QuadScalar(2)}));

  auto axis = immersion(1, {"u1", "0"});
  EXPECT_EQ(ambient_derivative(axis, du, field(1, {"u1"}), QVec(1)), (QVec{QuadScalar(1), QuadScalar(0)}));
}

TEST(GaussSplit, LinearAndTransversalExamples) {
  // Linear lightlike plane (u1, u1, u2) in (-,+,+,+).
  auto f = immersion(2, {"u1", "u1", "u2", "0"});
  SignatureSpace space({-1, 1, 1, 1});
  InducedGeometry geo(f, build_frame(f, QVec(2), space));
  auto w = TangentField::coordinate(2, 0), u = field(2, {"u2", "1"});
  auto split = geo.gauss(w, u);
  EXPECT_TRUE(is_zero_vec(split.hl));
  EXPECT_TRUE(is_zero_vec(split.hs));

  const auto& n1 = geo.frame().ltr[0];
  auto s = geo.gauss_split(n1);
  EXPECT_TRUE(is_zero_vec(s.nabla));
  EXPECT_EQ(s.hl, n1);
  EXPECT_TRUE(is_zero_vec(s.hs));

  auto wl = geo.weingarten_ltr(QVec{QuadScalar(1), QuadScalar(0)}, QVec{QuadScalar(1)});
  EXPECT_TRUE(is_zero_vec(wl.shape) && is_zero_vec(wl.connection) && is_zero_vec(wl.cross));
  auto ws = geo.weingarten_str(QVec{QuadScalar(0), QuadScalar(1)}, QVec{QuadScalar(1)});
  EXPECT_TRUE(is_zero_vec(ws.shape) && is_zero_vec(ws.connection) && is_zero_vec(ws.cross));
  auto md = metric_deviation(geo, w, u, TangentField::coordinate(2, 1));
  EXPECT_TRUE(md.direct.is_zero());
  EXPECT_TRUE(md.via_hl.is_zero());
}

TEST(InducedProperties, IdentitiesOnRandomScenes) {
  Rng rng(307);
  int scenes = 0;
  for (int t = 0; t < 100; ++t) {
    MetallicParams params = t % 3 == 0 ? MetallicParams{1, 1} : (t % 3 == 1 ? MetallicParams{2, 1} : MetallicParams{0, 2});
    std::size_t r = 1 + t % 2;
    std::size_t m = std::min<std::size_t>(3, r + t % 2 + (r == 1 ? 1 : 0));
    std::size_t n = std::min<std::size_t>(6, m + r + 1 + t % 2);
    auto sc = random_polynomial_scene(rng, params, n, m, r);
    SignatureSpace space(sc.eps);
    InducedGeometry geo(sc.immersion, build_frame(sc.immersion, sc.point, space));
    const auto& fr = geo.frame();
    ASSERT_EQ(fr.r, r);
    ++scenes;

    auto w = random_field(rng, params, m), u = random_field(rng, params, m), v = random_field(rng, params, m);
    QVec wv = w.at(sc.point), uv = u.at(sc.point);

    // Gauss reassembly, and the jet path against direct differentiation.
    auto gs = geo.gauss(w, u);
    EXPECT_EQ(gs.nabla + gs.hl + gs.hs, gs.ambient);
    EXPECT_EQ(gs.ambient, ambient_derivative(sc.immersion, w, u, sc.point));

    // Symmetry and bilinearity of the second fundamental forms.
    EXPECT_EQ(geo.hl(wv, uv), geo.hl(uv, wv));
    EXPECT_EQ(geo.hs(wv, uv), geo.hs(uv, wv));
    QuadScalar c = random_scalar(rng, params);
    QVec vv = v.at(sc.point);
    EXPECT_EQ(geo.hl(wv, uv + scale(c, vv)), geo.hl(wv, uv) + scale(c, geo.hl(wv, vv)));
    EXPECT_EQ(geo.hs(scale(c, wv), uv), scale(c, geo.hs(wv, uv)));

    QVec nc = random_vec(rng, params, r);
    QVec n_vec = geo.ltr_vec(nc);
    QVec xi = geo.rad_vec(random_vec(rng, params, r));
    if (geo.str_dim() > 0) {
      QVec z = geo.str_vec(random_vec(rng, params, geo.str_dim()));
      EXPECT_TRUE(residual_12(geo, wv, uv, z).is_zero());
      EXPECT_TRUE(residual_13(geo, wv, n_vec, z).is_zero());
      EXPECT_TRUE(geo.str_part(geo.shape(wv, z)).size() == fr.n);
      EXPECT_TRUE(is_zero_vec(geo.transversal_part(geo.shape(wv, z))));
    }
    EXPECT_TRUE(is_zero_vec(geo.transversal_part(geo.shape(wv, n_vec))));
    EXPECT_TRUE(residual_16(geo, wv, uv, xi).is_zero());
    EXPECT_TRUE(residual_17(geo, wv, uv, n_vec).is_zero());
    EXPECT_TRUE(residual_18(geo, wv, xi).is_zero());
    for (const auto& x : fr.xi) EXPECT_TRUE(is_zero_vec(residual_18_shape(geo, x)));

    auto md = metric_deviation(geo, w, u, v);
    EXPECT_EQ(md.direct, md.via_hl);
    EXPECT_TRUE(screen_metric_deviation(geo, w, u, v).is_zero());
  }
  EXPECT_EQ(scenes, 100);
}

// The h^s form of the screen-side pairing has an identically zero left side,
// so its residual is -g(A_N W, PU); it is non-zero on some curved scene.
TEST(InducedProperties, HsPairingWithLtrVanishes) {
  Rng rng(311);
  bool nonzero_seen = false;
  for (int t = 0; t < 20; ++t) {
    auto sc = random_polynomial_scene(rng, kGolden, 5, 2, 1);
    InducedGeometry geo(sc.immersion, build_frame(sc.immersion, sc.point, SignatureSpace(sc.eps)));
    QVec w = random_vec(rng, kGolden, 2), u = random_vec(rng, kGolden, 2);
    QVec n = geo.frame().ltr[0];
    QVec pu = geo.screen_part(geo.push_vec(u));
    EXPECT_TRUE(geo.g(geo.hs(w, geo.chart_of(pu)), n).is_zero());
    EXPECT_EQ(residual_17_hs(geo, w, u, n), -geo.g(geo.shape(w, n), pu));
    nonzero_seen = nonzero_seen || !residual_17_hs(geo, w, u, n).is_zero();
  }
  EXPECT_TRUE(nonzero_seen);
}

TEST(InducedProperties, ScreenChoiceLeavesRadicalPairingsFixed) {
  Rng rng(313);
  auto sc = random_polynomial_scene(rng, kGolden, 6, 3, 1);
  SignatureSpace space(sc.eps);
  InducedGeometry base(sc.immersion, build_frame(sc.immersion, sc.point, space));
  QVec w = random_vec(rng, kGolden, 3), u = random_vec(rng, kGolden, 3);
  for (int t = 0; t < 20; ++t) {
    const auto& bf = base.frame();
    std::vector<QVec> chart;
    for (const auto& s : bf.screen_chart) chart.push_back(s + scale(random_scalar(rng, kGolden), bf.xi_chart[0]));
    FrameOptions opts;
    opts.screen_override = chart;
    InducedGeometry geo(sc.immersion, build_frame(sc.immersion, sc.point, space, nullptr, opts));
    EXPECT_EQ(geo.frame().rad, bf.rad);
    EXPECT_EQ(geo.g(geo.hl(w, u), bf.xi[0]), base.g(base.hl(w, u), bf.xi[0]));
    EXPECT_EQ(geo.hs(w, u), base.hs(w, u));
  }
}
