// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance_test [seed]

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lightlike/scene.hpp"
#include "lightlike/structured_scene.hpp"

using namespace lightlike;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fixture_path(const std::string& name) { return std::string(LIGHTLIKE_FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::vector<std::string> kFixtures = {
    "metallic-validate.json",          "paper-example.json",      "radical-transversal-linear.json",
    "radical-transversal-curved.json", "transversal-linear.json", "transversal-curved.json",
    "transversal-screen-gap.json"};

const std::vector<std::string> kAgreementIds = {"thm-3.5", "thm-3.6", "thm-3.7", "thm-3.8", "thm-3.9",
                                                "thm-4.5", "thm-4.6", "thm-4.7", "thm-4.8", "thm-4.9"};

const std::vector<Branch> kPaperBranches = {Branch::PMinusSigma, Branch::Sigma, Branch::PMinusSigma, Branch::Sigma,
                                            Branch::Sigma};
const std::vector<int> kPaperSignature = {-1, 1, -1, 1, 1};

QVec random_vec(Rng& rng, const MetallicParams& params, std::size_t k) {
  QVec v(k);
  for (auto& x : v) x = random_scalar(rng, params, 2, 2);
  return v;
}

TangentField random_field(Rng& rng, const MetallicParams& params, std::size_t m) {
  return TangentField{random_polynomials(rng, params, m, m, 1)};
}

// ---- 1 ----

Result metallic_numbers() {
  Result out;
  struct Case {
    MetallicParams params;
    double value;
  };
  for (const Case& c : {Case{{1, 1}, 1.6180339887}, Case{{2, 1}, 2.4142135624}}) {
    QuadScalar x = metallic_number(c.params);
    QuadScalar half(Rational(1, 2), Rational(0), c.params);
    // (1 + sqrt5)/2 and 1 + sqrt2 are the positive roots of x^2 = x + 1 and x^2 = 2x + 1.
    QuadScalar p(static_cast<long>(c.params.p)), q(static_cast<long>(c.params.q));
    out.expect((x * x - p * x - q).is_zero(), "not a root for p=" + std::to_string(c.params.p));
    out.expect(sign(x - half * p) == 1, "wrong root for p=" + std::to_string(c.params.p));
    QuadScalar shifted = x - half * p;
    out.expect(shifted * shifted == half * half * (p * p + QuadScalar(4) * q), "discriminant mismatch");
    out.expect(std::abs(embed(x, 12).value - c.value) <= 1e-9, "embed " + embed(x, 12).text);
  }
  if (out.ok) out.detail = "phi = " + embed(metallic_number({1, 1}), 10).text + ", silver = " +
                           embed(metallic_number({2, 1}), 10).text;
  return out;
}

// ---- 2 ----

Result structure_validators() {
  Result out;
  SignatureSpace space(kPaperSignature);
  for (MetallicParams params : {MetallicParams{0, 2}, MetallicParams{1, 1}}) {
    MetallicStructure j = diag_metallic(params, kPaperBranches);
    std::string tag = "(" + std::to_string(params.p) + "," + std::to_string(params.q) + ")";
    out.expect(validate_metallic(j.matrix(), params).holds, "J^2 = pJ + qI fails for " + tag);
    out.expect(validate_compatibility(j.matrix(), space).holds, "compatibility fails for " + tag);
  }
  MetallicParams golden{1, 1};
  QMatrix id(5, 5);
  for (std::size_t a = 0; a < 5; ++a) id(a, a) = 1;
  Verdict v = validate_metallic(id, golden);
  out.expect(!v.holds && v.witness.has_value(), "J = I not rejected with a witness");
  // I - I - I = -I: every diagonal entry is a witness.
  if (v.witness) out.expect(v.witness->row == v.witness->col && v.witness->value == QuadScalar(-1), "witness value");
  if (out.ok)
    out.detail = "J = I rejected at entry (" + std::to_string(v.witness->row + 1) + ", " +
                 std::to_string(v.witness->col + 1) + ") = " + format(v.witness->value);
  return out;
}

// ---- 3 ----

Result paper_pipeline(std::uint64_t seed) {
  Result out;
  Scene scene = parse_scene(read_file(fixture_path("paper-example.json")));
  MetallicParams params = scene.params;
  QuadScalar s = QuadScalar::sigma(params), one(1), zero;
  std::size_t n = scene.dim();
  PolynomialImmersion f = scene.immersion();

  // W1 = e1 + s e4, W2 = e3 + s e4, W3 = e5.
  std::vector<QVec> w(3, QVec(n));
  w[0][0] = one, w[0][3] = s;
  w[1][2] = one, w[1][3] = s;
  w[2][4] = one;
  QMatrix expected_gram(3, 3, {s * s - one, s * s, zero, s * s, s * s - one, zero, zero, zero, one});
  for (const auto& u0 : scene.points) {
    auto cols = f.jacobian(u0);
    out.expect(cols == w, "Jacobian is not {W1, W2, W3}");
    out.expect(gram(scene.signature, cols) == expected_gram, "Gram mismatch");
  }
  // Leading minor (s^2 - 1)^2 - s^4 = 1 - 2 s^2 = -3 with s^2 = 2: full rank, no radical.
  QuadScalar det = (s * s - one) * (s * s - one) - s * s * s * s;
  out.expect(det == QuadScalar(-3), "Gram determinant");
  out.expect(radical(f, scene.points[0], SignatureSpace(scene.signature)).second == 0, "radical rank");

  QVec xi{s, -s, QuadScalar(2)};
  std::string residual = format(expected_gram * xi);
  Report rep = run(scene, RunOptions{seed, true});
  out.expect(rep.body["points"][0]["radical_rank"] == 0, "reported radical rank");
  bool notice = false;
  for (const auto& nt : rep.body["notices"])
    notice = notice || nt.get<std::string>().find("Gram times xi = " + residual) != std::string::npos;
  out.expect(notice, "no discrepancy notice with residual " + residual);
  out.expect(!rep.body["checks"].empty(), "no verdicts");

  // Floating oracle, independent of the library's double path.
  double sd = std::sqrt(2.0), dev = 0;
  double g[3][3] = {{sd * sd - 1, sd * sd, 0}, {sd * sd, sd * sd - 1, 0}, {0, 0, 1}};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) dev = std::max(dev, std::abs(embed(expected_gram(a, b), 17).value - g[a][b]));
  dev = std::max(dev, std::abs(embed(s, 17).value - sd));
  out.expect(dev <= 1e-9, "exact vs float deviation " + std::to_string(dev));
  out.expect(rep.body["float_check"]["within_tolerance"].get<bool>(), "report float check");
  if (out.ok)
    out.detail = "Gram nondegenerate (r = 0), claimed xi residual " + residual + ", float deviation " +
                 rep.body["float_check"]["max_abs_deviation"].get<std::string>();
  return out;
}

// ---- 4 ----

Result decomposition_identities(std::uint64_t seed) {
  Result out;
  Rng rng(seed + 307);
  const int count = 100;
  for (int t = 0; t < count && out.ok; ++t) {
    MetallicParams params = t % 3 == 0 ? MetallicParams{1, 1} : (t % 3 == 1 ? MetallicParams{2, 1} : MetallicParams{0, 2});
    std::size_t r = 1 + t % 2;
    std::size_t m = std::min<std::size_t>(3, r + t % 2 + (r == 1 ? 1 : 0));
    std::size_t n = std::min<std::size_t>(6, m + r + 1 + t % 2);
    auto sc = random_polynomial_scene(rng, params, n, m, r);
    InducedGeometry geo(sc.immersion, build_frame(sc.immersion, sc.point, SignatureSpace(sc.eps)));
    const auto& fr = geo.frame();
    std::string at = "scene " + std::to_string(t) + ": ";

    auto w = random_field(rng, params, m), u = random_field(rng, params, m), v = random_field(rng, params, m);
    QVec wv = w.at(sc.point), uv = u.at(sc.point);
    auto gs = geo.gauss(w, u);
    out.expect(gs.nabla + gs.hl + gs.hs == gs.ambient, at + "Gauss reassembly");
    out.expect(gs.ambient == ambient_derivative(sc.immersion, w, u, sc.point), at + "ambient derivative");
    out.expect(geo.hl(wv, uv) == geo.hl(uv, wv), at + "h^l symmetry");
    out.expect(geo.hs(wv, uv) == geo.hs(uv, wv), at + "h^s symmetry");

    QVec n_vec = geo.ltr_vec(random_vec(rng, params, r));
    QVec xi = geo.rad_vec(random_vec(rng, params, r));
    if (geo.str_dim() > 0) {
      QVec z = geo.str_vec(random_vec(rng, params, geo.str_dim()));
      out.expect(residual_12(geo, wv, uv, z).is_zero(), at + "screen transversal pairing");
      out.expect(residual_13(geo, wv, n_vec, z).is_zero(), at + "ltr / str cross pairing");
    }
    out.expect(residual_16(geo, wv, uv, xi).is_zero(), at + "h^l against the radical");
    out.expect(residual_17(geo, wv, uv, n_vec).is_zero(), at + "h* against ltr");
    out.expect(residual_18(geo, wv, xi).is_zero(), at + "A* xi pairing");
    for (const auto& x : fr.xi) out.expect(is_zero_vec(residual_18_shape(geo, x)), at + "A*_xi xi");
    auto md = metric_deviation(geo, w, u, v);
    out.expect(md.direct == md.via_hl, at + "metric deviation two paths");
  }
  if (out.ok) out.detail = std::to_string(count) + " scenes, all residuals exactly zero";
  return out;
}

// ---- 5 ----

Result ltr_contract(std::uint64_t seed) {
  Result out;
  Rng rng(seed + 227);
  const int count = 120;
  for (int t = 0; t < count && out.ok; ++t) {
    MetallicParams params{static_cast<std::int64_t>(t % 3), 1 + t % 2 + (t % 3 == 0 ? 1 : 0)};
    std::size_t r = 1 + t % 2;
    std::size_t m = r + 1 + (t / 2) % 2;
    auto lin = random_linear_lightlike(rng, params, m + r + (t / 4) % 2, m, r);
    auto nv = construct_ltr<QuadScalar>(lin.eps, lin.xi, lin.screen, {});
    out.expect(nv.size() == r, "frame " + std::to_string(t) + ": wrong ltr rank");
    for (std::size_t i = 0; i < nv.size(); ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        out.expect(inner(lin.eps, nv[i], lin.xi[j]) == QuadScalar(i == j ? 1 : 0), "g(N_i, xi_j) != delta_ij");
        out.expect(inner(lin.eps, nv[i], nv[j]).is_zero(), "g(N_i, N_j) != 0");
      }
      for (const auto& sv : lin.screen) out.expect(inner(lin.eps, nv[i], sv).is_zero(), "N not orthogonal to screen");
    }
  }
  if (out.ok) out.detail = std::to_string(count) + " frames, r in {1, 2}";
  return out;
}

// ---- 6 ----

StructuredScene agreement_scene(std::uint64_t seed, std::size_t t) {
  Rng rng(seed + 9000 + t);
  Mode mode = t % 2 ? Mode::Transversal : Mode::RadicalTransversal;
  std::size_t r = 1 + (t / 12) % 2;
  std::size_t m = r == 1 ? 2 + (t / 3) % 2 : 3;
  std::size_t s = m - r;
  std::size_t n = std::max(2 * r + (mode == Mode::RadicalTransversal ? s : 2 * s), m + r);
  if (n < 6 && (t / 6) % 2) ++n;
  std::vector<OracleKind> forced;
  if (std::size_t k = (t / 2) % 6; k) forced.push_back(all_oracles()[k - 1]);
  return random_structured_scene(rng, MetallicParams{0, 2}, mode, n, m, r, forced);
}

struct Tally {
  int agree = 0, disagree = 0;
};

Result theorem_agreement(std::uint64_t seed) {
  Result out;
  std::map<std::string, Tally> fixtures, scenes;

  for (const auto& name : kFixtures) {
    Report rep = run(parse_scene(read_file(fixture_path(name))), RunOptions{seed, false});
    for (const auto& c : rep.body["checks"]) {
      std::string id = c["name"];
      if (std::find(kAgreementIds.begin(), kAgreementIds.end(), id) == kAgreementIds.end()) continue;
      (c["consistent"].get<bool>() ? fixtures[id].agree : fixtures[id].disagree)++;
    }
  }

  const std::size_t count = 60;
  std::size_t applicable = 0;
  for (std::size_t t = 0; t < count; ++t) {
    StructuredScene sc = agreement_scene(seed, t);
    InducedGeometry geo(sc.immersion, build_frame(sc.immersion, sc.point, SignatureSpace(sc.eps), &sc.structure));
    Classifier cl(geo, sc.structure);
    if (!cl.applicable(sc.mode)) continue;
    ++applicable;
    for (const auto& id : kAgreementIds) {
      if (Classifier::mode_of(id) != sc.mode) continue;
      auto c = cl.theorem(id);
      bool same = c.verdict != Outcome::NotApplicable && c.oracle && c.verdict == *c.oracle;
      (same ? scenes[id].agree : scenes[id].disagree)++;
    }
  }
  out.expect(applicable >= 50, "only " + std::to_string(applicable) + " applicable scenes");

  std::string bad;
  for (const auto& id : kAgreementIds) {
    int d = fixtures[id].disagree + scenes[id].disagree;
    if (!d) continue;
    if (!bad.empty()) bad += "; ";
    bad += id + " disagrees on " + std::to_string(fixtures[id].disagree) + "/" +
           std::to_string(fixtures[id].agree + fixtures[id].disagree) + " fixture checks and " +
           std::to_string(scenes[id].disagree) + "/" + std::to_string(scenes[id].agree + scenes[id].disagree) +
           " scenes";
  }
  out.expect(bad.empty(), bad);
  std::string summary = std::to_string(applicable) + " applicable scenes, " + std::to_string(kFixtures.size()) + " fixtures";
  out.detail = out.ok ? summary : summary + "; " + out.detail;
  return out;
}

// ---- 7 ----

Result nonexistence(std::uint64_t seed) {
  Result out;
  int audits = 0;
  for (std::int64_t p : {1, 2, 3})
    for (std::int64_t q : {1, 2}) {
      MetallicParams params{p, q};
      out.expect(nonexistence_symbolic_residual(params) == QuadScalar(static_cast<long>(-p)),
                 "symbolic residual for p=" + std::to_string(p));
      for (Mode kind : {Mode::RadicalTransversal, Mode::Transversal}) {
        auto c = nonexistence_audit(params, kind, seed + 42 + 10 * p + q);
        ++audits;
        out.expect(c.verdict == Outcome::Holds, "audit (" + std::to_string(p) + "," + std::to_string(q) + "): " + c.witness);
        out.expect(c.notes.size() > 1 && c.notes[1].find("200 candidates, 0 satisfy") != std::string::npos,
                   "candidate count for (" + std::to_string(p) + "," + std::to_string(q) + ")");
      }
    }
  if (out.ok) out.detail = std::to_string(audits) + " audits of 200 candidates, zero hits, residual -p";
  return out;
}

// ---- 8 ----

std::string full_suite(std::uint64_t seed) {
  std::string all;
  for (const auto& name : kFixtures)
    all += run(parse_scene(read_file(fixture_path(name))), RunOptions{seed, true}).text();
  for (std::int64_t p : {1, 2, 3})
    for (Mode kind : {Mode::RadicalTransversal, Mode::Transversal}) {
      auto c = nonexistence_audit(MetallicParams{p, 1}, kind, seed);
      all += c.witness + "\n";
      for (const auto& nt : c.notes) all += nt + "\n";
    }
  for (std::size_t t = 0; t < 8; ++t) {
    StructuredScene sc = agreement_scene(seed, t);
    InducedGeometry geo(sc.immersion, build_frame(sc.immersion, sc.point, SignatureSpace(sc.eps), &sc.structure));
    Classifier cl(geo, sc.structure);
    for (const auto& id : Classifier::theorem_ids()) {
      auto c = cl.theorem(id);
      all += id + " " + std::to_string(static_cast<int>(c.verdict)) + " " + c.witness + "\n";
    }
  }
  return all;
}

Result determinism(std::uint64_t seed) {
  Result out;
  std::string a = full_suite(seed), b = full_suite(seed);
  out.expect(a == b, "reports differ between runs");
  out.detail = std::to_string(a.size()) + " bytes, fnv1a64 " + fnv1a64(a);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::stoull(argv[1]);

  struct Criterion {
    int id;
    double limit_s;  // 0: no runtime limit
    std::function<Result()> body;
  };
  std::vector<Criterion> criteria = {
      {1, 0.001, metallic_numbers},
      {2, 0.010, structure_validators},
      {3, 1.0, [&] { return paper_pipeline(seed); }},
      {4, 60.0, [&] { return decomposition_identities(seed); }},
      {5, 10.0, [&] { return ltr_contract(seed); }},
      {6, 120.0, [&] { return theorem_agreement(seed); }},
      {7, 5.0, [&] { return nonexistence(seed); }},
      {8, 0.0, [&] { return determinism(seed); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.body();
    } catch (const std::exception& e) {
      res.ok = false;
      res.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit_s == 0 || secs < c.limit_s;
    bool pass = res.ok && in_time;
    all = all && pass;
    std::ostringstream time;
    time << std::fixed << std::setprecision(secs < 0.01 ? 6 : 2) << secs << " s";
    if (c.limit_s) time << " / limit " << std::defaultfloat << std::setprecision(6) << c.limit_s << " s";
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " (" << time.str() << ") "
              << (in_time ? "" : "over time limit; ") << res.detail << std::endl;
  }
  return all ? 0 : 1;
}
