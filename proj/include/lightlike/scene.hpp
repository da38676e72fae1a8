#pragma once

// Scene files: parsing with located errors, canonical serialization, and the
// deterministic report produced by running the requested checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lightlike/ambient.hpp"
#include "lightlike/classifier.hpp"
#include "lightlike/errors.hpp"
#include "lightlike/induced.hpp"
#include "lightlike/polynomial.hpp"
#include "lightlike/structured_scene.hpp"
#include "lightlike/submanifold.hpp"

#ifndef LIGHTLIKE_VERSION
#define LIGHTLIKE_VERSION "0.1.0"
#endif

namespace lightlike {

using Json = nlohmann::json;

/// Input error with a location: line/column for syntax, JSON pointer for content.
class SceneError : public Error {
 public:
  SceneError(ErrorKind kind, std::string pointer, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(kind, describe(pointer, what, line, column)), pointer_(std::move(pointer)), line_(line), column_(column) {}

  const std::string& pointer() const { return pointer_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string describe(const std::string& pointer, const std::string& what, std::size_t line, std::size_t column) {
    if (line) return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    return (pointer.empty() ? std::string("/") : pointer) + ": " + what;
  }

  std::string pointer_;
  std::size_t line_, column_;
};

[[noreturn]] inline void invalid(const std::string& pointer, const std::string& what) {
  throw SceneError(ErrorKind::ValidationError, pointer, what);
}

struct CheckInfo {
  std::string id;
  std::string summary;
};

/// Every check a scene may request, in canonical execution order.
inline const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> all = {
      {"metallic-validate", "J^2 = pJ + qI and g(JX,Y) = g(X,JY)"},
      {"def-3.1", "radical transversal lightlike submanifold"},
      {"thm-3.3", "S(TN^perp) is J-invariant (radical transversal)"},
      {"thm-3.5", "metric induced connection (radical transversal)"},
      {"thm-3.6", "screen integrability (radical transversal)"},
      {"thm-3.7", "radical integrability (radical transversal)"},
      {"thm-3.8", "radical totally geodesic foliation (radical transversal)"},
      {"thm-3.9", "screen totally geodesic foliation (radical transversal)"},
      {"def-4.1", "transversal lightlike submanifold"},
      {"prop-4.2", "mu is J-invariant (transversal)"},
      {"thm-4.5", "radical integrability (transversal)"},
      {"thm-4.6", "screen integrability (transversal)"},
      {"thm-4.7", "screen totally geodesic foliation (transversal)"},
      {"thm-4.8", "radical totally geodesic foliation (transversal)"},
      {"thm-4.9", "metric induced connection (transversal)"},
      {"audit-nonexistence", "no 1-lightlike radical transversal or transversal configuration"},
      {"structure-eqs", "J-parallel structure equations split into parts"},
  };
  return all;
}

inline std::optional<std::size_t> check_rank(const std::string& id) {
  const auto& all = check_catalog();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].id == id) return i;
  return std::nullopt;
}

struct Claims {
  std::optional<std::size_t> radical_rank;
  std::optional<QVec> xi;  // tangent-frame coefficients
};

struct Scene {
  std::string name;
  MetallicParams params{1, 1};
  std::vector<int> signature;
  bool diagonal = true;
  std::vector<Branch> branches;
  QMatrix entries;
  std::size_t chart_dim = 0;
  std::vector<Polynomial> components;
  std::vector<QVec> points;
  std::optional<std::vector<QVec>> screen;
  std::map<std::string, std::vector<Polynomial>> fields;
  std::map<std::string, std::vector<Polynomial>> sections;
  std::vector<std::string> checks;
  std::optional<std::uint64_t> seed;
  std::optional<Claims> claims;

  std::size_t dim() const { return signature.size(); }

  MetallicStructure structure() const {
    if (diagonal) return diag_metallic(params, branches);
    return MetallicStructure(params, entries);
  }

  PolynomialImmersion immersion() const { return PolynomialImmersion(chart_dim, components); }
};

// ---- parsing ----

namespace detail {

inline std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

class SceneReader {
 public:
  explicit SceneReader(const Json& root) : root_(root) {}

  Scene read() {
    if (!root_.is_object()) invalid("", "scene must be a JSON object");
    static const std::set<std::string> known = {"name",   "metallic", "ambient", "structure", "submanifold",
                                                "points", "screen",   "fields",  "sections",  "checks",
                                                "seed",   "claims"};
    for (const auto& [k, v] : root_.items())
      if (!known.count(k)) invalid("/" + escape_pointer(k), "unknown key");

    Scene s;
    if (root_.contains("name")) s.name = string_at(root_["name"], "/name");
    read_params(s);
    read_ambient(s);
    read_structure(s);
    read_submanifold(s);
    read_points(s);
    read_optional(s);
    read_checks(s);
    if (s.claims && s.claims->radical_rank.value_or(0) > 0) {
      bool neg = std::count(s.signature.begin(), s.signature.end(), -1) > 0;
      bool pos = std::count(s.signature.begin(), s.signature.end(), 1) > 0;
      if (!neg || !pos) invalid("/ambient/signature", "a degenerate induced metric needs both signs");
    }
    return s;
  }

 private:
  static const Json& member(const Json& obj, const char* key, const std::string& at) {
    if (!obj.is_object()) invalid(at, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) invalid(at + "/" + key, "missing required key");
    return *it;
  }

  static void only_keys(const Json& obj, const std::set<std::string>& keys, const std::string& at) {
    for (const auto& [k, v] : obj.items())
      if (!keys.count(k)) invalid(at + "/" + escape_pointer(k), "unknown key");
  }

  static std::string string_at(const Json& v, const std::string& at) {
    if (!v.is_string()) invalid(at, "expected a string");
    return v.get<std::string>();
  }

  static std::int64_t int_at(const Json& v, const std::string& at) {
    if (!v.is_number_integer()) invalid(at, "expected an integer");
    return v.get<std::int64_t>();
  }

  static const Json& array_at(const Json& v, const std::string& at) {
    if (!v.is_array()) invalid(at, "expected an array");
    return v;
  }

  QuadScalar scalar_at(const Json& v, const std::string& at) const {
    std::string text = string_at(v, at);
    try {
      Polynomial p = parse_polynomial(text, 0, params_);
      return p.constant();
    } catch (const Error& e) {
      invalid(at, std::string("bad scalar: ") + e.what());
    }
  }

  Polynomial poly_at(const Json& v, std::size_t vars, const std::string& at) const {
    std::string text = string_at(v, at);
    try {
      return parse_polynomial(text, vars, params_);
    } catch (const Error& e) {
      invalid(at, std::string("bad polynomial: ") + e.what());
    }
  }

  QVec scalar_vec(const Json& v, std::size_t len, const std::string& at) const {
    array_at(v, at);
    if (v.size() != len) invalid(at, "expected " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
    QVec out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(scalar_at(v[i], at + "/" + std::to_string(i)));
    return out;
  }

  std::vector<Polynomial> poly_vec(const Json& v, std::size_t len, std::size_t vars, const std::string& at) const {
    array_at(v, at);
    if (v.size() != len) invalid(at, "expected " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(poly_at(v[i], vars, at + "/" + std::to_string(i)));
    return out;
  }

  void read_params(Scene& s) {
    const Json& m = member(root_, "metallic", "");
    only_keys(m, {"p", "q"}, "/metallic");
    s.params.p = int_at(member(m, "p", "/metallic"), "/metallic/p");
    s.params.q = int_at(member(m, "q", "/metallic"), "/metallic/q");
    try {
      s.params.validate();
    } catch (const Error& e) {
      invalid("/metallic", e.what());
    }
    params_ = s.params;
  }

  void read_ambient(Scene& s) {
    const Json& a = member(root_, "ambient", "");
    only_keys(a, {"dim", "signature"}, "/ambient");
    std::int64_t dim = int_at(member(a, "dim", "/ambient"), "/ambient/dim");
    if (dim < 1 || dim > 64) invalid("/ambient/dim", "dimension must be between 1 and 64");
    const Json& sig = array_at(member(a, "signature", "/ambient"), "/ambient/signature");
    if (static_cast<std::int64_t>(sig.size()) != dim)
      invalid("/ambient/signature", "signature length " + std::to_string(sig.size()) + " differs from dim " +
                                        std::to_string(dim));
    for (std::size_t i = 0; i < sig.size(); ++i) {
      std::int64_t e = int_at(sig[i], "/ambient/signature/" + std::to_string(i));
      if (e != 1 && e != -1) invalid("/ambient/signature/" + std::to_string(i), "entries must be -1 or 1");
      s.signature.push_back(static_cast<int>(e));
    }
  }

  void read_structure(Scene& s) {
    const Json& st = member(root_, "structure", "");
    std::string kind = string_at(member(st, "kind", "/structure"), "/structure/kind");
    const std::size_t n = s.dim();
    if (kind == "diagonal") {
      only_keys(st, {"kind", "branches"}, "/structure");
      const Json& br = array_at(member(st, "branches", "/structure"), "/structure/branches");
      if (br.size() != n) invalid("/structure/branches", "expected " + std::to_string(n) + " branches");
      for (std::size_t i = 0; i < n; ++i) {
        std::string b = string_at(br[i], "/structure/branches/" + std::to_string(i));
        if (b == "sigma")
          s.branches.push_back(Branch::Sigma);
        else if (b == "p-sigma")
          s.branches.push_back(Branch::PMinusSigma);
        else
          invalid("/structure/branches/" + std::to_string(i), "branch must be \"sigma\" or \"p-sigma\"");
      }
    } else if (kind == "matrix") {
      only_keys(st, {"kind", "entries"}, "/structure");
      s.diagonal = false;
      const Json& rows = array_at(member(st, "entries", "/structure"), "/structure/entries");
      if (rows.size() != n) invalid("/structure/entries", "expected " + std::to_string(n) + " rows");
      s.entries = QMatrix(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        QVec row = scalar_vec(rows[i], n, "/structure/entries/" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) s.entries(i, j) = row[j];
      }
    } else {
      invalid("/structure/kind", "kind must be \"diagonal\" or \"matrix\"");
    }
  }

  void read_submanifold(Scene& s) {
    const Json& sm = member(root_, "submanifold", "");
    only_keys(sm, {"chart_dim", "components"}, "/submanifold");
    std::int64_t m = int_at(member(sm, "chart_dim", "/submanifold"), "/submanifold/chart_dim");
    if (m < 1 || static_cast<std::size_t>(m) > s.dim())
      invalid("/submanifold/chart_dim", "chart dimension must be between 1 and the ambient dimension");
    s.chart_dim = static_cast<std::size_t>(m);
    s.components = poly_vec(member(sm, "components", "/submanifold"), s.dim(), s.chart_dim, "/submanifold/components");
  }

  void read_points(Scene& s) {
    const Json& pts = array_at(member(root_, "points", ""), "/points");
    if (pts.empty()) invalid("/points", "at least one point is required");
    for (std::size_t k = 0; k < pts.size(); ++k)
      s.points.push_back(scalar_vec(pts[k], s.chart_dim, "/points/" + std::to_string(k)));
  }

  void read_optional(Scene& s) {
    if (root_.contains("screen")) {
      const Json& sc = array_at(root_["screen"], "/screen");
      std::vector<QVec> basis;
      for (std::size_t i = 0; i < sc.size(); ++i)
        basis.push_back(scalar_vec(sc[i], s.chart_dim, "/screen/" + std::to_string(i)));
      s.screen = basis;
    }
    if (root_.contains("fields")) {
      const Json& f = root_["fields"];
      if (!f.is_object()) invalid("/fields", "expected an object");
      for (const auto& [k, v] : f.items())
        s.fields[k] = poly_vec(v, s.chart_dim, s.chart_dim, "/fields/" + escape_pointer(k));
    }
    if (root_.contains("sections")) {
      const Json& f = root_["sections"];
      if (!f.is_object()) invalid("/sections", "expected an object");
      for (const auto& [k, v] : f.items()) {
        if (k != "xi" && k != "N" && k != "Z") invalid("/sections/" + escape_pointer(k), "sections are xi, N and Z");
        s.sections[k] = poly_vec(v, s.dim(), s.chart_dim, "/sections/" + k);
      }
    }
    if (root_.contains("seed")) {
      const Json& v = root_["seed"];
      if (!v.is_number_unsigned()) invalid("/seed", "seed must be a non-negative integer");
      s.seed = v.get<std::uint64_t>();
    }
    if (root_.contains("claims")) {
      const Json& c = root_["claims"];
      if (!c.is_object()) invalid("/claims", "expected an object");
      only_keys(c, {"radical_rank", "xi"}, "/claims");
      Claims cl;
      if (c.contains("radical_rank")) {
        std::int64_t r = int_at(c["radical_rank"], "/claims/radical_rank");
        if (r < 0 || static_cast<std::size_t>(r) > s.chart_dim) invalid("/claims/radical_rank", "rank out of range");
        cl.radical_rank = static_cast<std::size_t>(r);
      }
      if (c.contains("xi")) cl.xi = scalar_vec(c["xi"], s.chart_dim, "/claims/xi");
      s.claims = cl;
    }
  }

  void read_checks(Scene& s) {
    const Json& cs = array_at(member(root_, "checks", ""), "/checks");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string at = "/checks/" + std::to_string(i);
      std::string id = string_at(cs[i], at);
      if (!check_rank(id)) invalid(at, "unknown check \"" + id + "\"");
      if (!seen.insert(id).second) invalid(at, "duplicate check \"" + id + "\"");
    }
    for (const auto& info : check_catalog())
      if (seen.count(info.id)) s.checks.push_back(info.id);
  }

  const Json& root_;
  MetallicParams params_{1, 1};
};

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

inline Scene parse_scene(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte);
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw SceneError(ErrorKind::ParseError, "", pos == std::string::npos ? what : what.substr(pos), line, column);
  }
  return detail::SceneReader(root).read();
}

// ---- canonical form ----

inline Json scene_json(const Scene& s) {
  auto scalars = [](const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(format(x));
    return a;
  };
  auto polys = [](const std::vector<Polynomial>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(format(x));
    return a;
  };
  Json j;
  if (!s.name.empty()) j["name"] = s.name;
  j["metallic"] = {{"p", s.params.p}, {"q", s.params.q}};
  j["ambient"] = {{"dim", s.dim()}, {"signature", s.signature}};
  if (s.diagonal) {
    Json br = Json::array();
    for (Branch b : s.branches) br.push_back(b == Branch::Sigma ? "sigma" : "p-sigma");
    j["structure"] = {{"kind", "diagonal"}, {"branches", br}};
  } else {
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.entries.rows(); ++i) rows.push_back(scalars(s.entries.row(i)));
    j["structure"] = {{"kind", "matrix"}, {"entries", rows}};
  }
  j["submanifold"] = {{"chart_dim", s.chart_dim}, {"components", polys(s.components)}};
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(scalars(p));
  j["points"] = pts;
  if (s.screen) {
    Json sc = Json::array();
    for (const auto& v : *s.screen) sc.push_back(scalars(v));
    j["screen"] = sc;
  }
  if (!s.fields.empty()) {
    Json f = Json::object();
    for (const auto& [k, v] : s.fields) f[k] = polys(v);
    j["fields"] = f;
  }
  if (!s.sections.empty()) {
    Json f = Json::object();
    for (const auto& [k, v] : s.sections) f[k] = polys(v);
    j["sections"] = f;
  }
  j["checks"] = s.checks;
  if (s.seed) j["seed"] = *s.seed;
  if (s.claims) {
    Json c = Json::object();
    if (s.claims->radical_rank) c["radical_rank"] = *s.claims->radical_rank;
    if (s.claims->xi) c["xi"] = scalars(*s.claims->xi);
    j["claims"] = c;
  }
  return j;
}

/// Sorted keys, two-space indent, trailing newline.
inline std::string serialize_scene(const Scene& s) { return scene_json(s).dump(2) + "\n"; }

inline std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- floating oracle ----

namespace detail {

inline double eval_double(const Polynomial& p, const std::vector<double>& u) {
  double sum = 0;
  for (const auto& [e, c] : p.terms()) {
    double t = c.to_double();
    for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(u[i], static_cast<int>(e[i]));
    sum += t;
  }
  return sum;
}

/// Rank by Gaussian elimination with partial pivoting.
inline std::size_t float_rank(std::vector<std::vector<double>> a, double tol) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r; i < rows; ++i)
      if (std::fabs(a[i][c]) > std::fabs(a[best][c])) best = i;
    if (std::fabs(a[best][c]) < tol) continue;
    std::swap(a[best], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      double f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace detail

struct FloatCheck {
  double max_deviation = 0;
  bool rank_agrees = true;
};

/// Jacobian and Gram in doubles against the exact values, and the exact
/// radical against the floating Gram.
inline FloatCheck float_check(const Scene& s, const AdaptedFrame& fr, std::size_t k) {
  FloatCheck out;
  const std::size_t m = s.chart_dim, n = s.dim();
  std::vector<double> u;
  for (const auto& x : s.points[k]) u.push_back(x.to_double());
  std::vector<std::vector<double>> jac(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      jac[i][a] = detail::eval_double(s.components[a].derivative(i), u);
      out.max_deviation = std::max(out.max_deviation, std::fabs(jac[i][a] - fr.jacobian[i][a].to_double()));
    }
  std::vector<std::vector<double>> g(m, std::vector<double>(m));
  QMatrix exact = gram(fr.eps, fr.jacobian);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t a = 0; a < n; ++a) g[i][j] += fr.eps[a] * jac[i][a] * jac[j][a];
      out.max_deviation = std::max(out.max_deviation, std::fabs(g[i][j] - exact(i, j).to_double()));
    }
  for (const auto& xi : fr.xi_chart)
    for (std::size_t i = 0; i < m; ++i) {
      double r = 0;
      for (std::size_t j = 0; j < m; ++j) r += g[i][j] * xi[j].to_double();
      out.max_deviation = std::max(out.max_deviation, std::fabs(r));
    }
  out.rank_agrees = detail::float_rank(g, 1e-9) == m - fr.r;
  return out;
}

// ---- running ----

struct RunOptions {
  std::uint64_t seed = 0;
  bool float_check = false;
};

struct Report {
  Json body;
  int exit_code = 0;
  std::string text() const { return body.dump(2) + "\n"; }
};

namespace detail {

inline Json vec_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(format(x));
  return a;
}

inline Json result_json(const CheckResult& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  if (c.oracle) j["oracle"] = to_string(*c.oracle);
  if (!c.witness.empty()) j["witness"] = c.witness;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

inline CheckResult not_lightlike(const std::string& id) {
  CheckResult c;
  c.name = id;
  c.notes.push_back("not lightlike at the point (radical rank 0)");
  return c;
}

inline CheckResult point_check(const std::string& id, const Classifier& cl) {
  const bool lightlike = cl.frame().r > 0;
  if (id == "def-3.1" || id == "def-4.1") {
    if (!lightlike) return not_lightlike(id);
    return cl.definition(Classifier::mode_of(id));
  }
  if (id == "thm-3.3") return cl.invariance(Mode::RadicalTransversal);
  if (id == "prop-4.2") return cl.invariance(Mode::Transversal);
  if (id == "structure-eqs") return cl.structure_audit();
  return cl.theorem(id);
}

inline CheckResult metallic_check(const Scene& s) {
  CheckResult c;
  c.name = "metallic-validate";
  c.reference = "J^2 = pJ + qI and g(JX,Y) = g(X,JY)";
  MetallicStructure st = s.structure();
  Verdict quad = validate_metallic(st.matrix(), s.params);
  Verdict compat = validate_compatibility(st.matrix(), SignatureSpace(s.signature));
  c.verdict = quad && compat ? Outcome::Holds : Outcome::Fails;
  auto where = [](const Witness& w) {
    return "entry (" + std::to_string(w.row + 1) + ", " + std::to_string(w.col + 1) + ") = " + format(w.value);
  };
  if (!quad && quad.witness)
    c.witness = "J^2 - pJ - qI " + where(*quad.witness);
  else if (!compat && compat.witness)
    c.witness = "g(JX,Y) - g(X,JY) " + where(*compat.witness);
  return c;
}

inline CheckResult nonexistence_check(const Scene& s, std::uint64_t seed) {
  CheckResult rt = nonexistence_audit(s.params, Mode::RadicalTransversal, seed);
  CheckResult tr = nonexistence_audit(s.params, Mode::Transversal, seed + 1);
  CheckResult c;
  c.name = rt.name;
  c.reference = "no 1-lightlike radical transversal or transversal configuration; transversal needs dim Rad >= 2";
  c.must_hold = rt.must_hold;
  if (rt.verdict == Outcome::Fails || tr.verdict == Outcome::Fails)
    c.verdict = Outcome::Fails;
  else if (rt.verdict == Outcome::Holds && tr.verdict == Outcome::Holds)
    c.verdict = Outcome::Holds;
  c.witness = rt.witness.empty() ? tr.witness : rt.witness;
  c.notes.push_back(rt.notes[0]);
  c.notes.push_back("radical transversal: " + rt.notes[1]);
  c.notes.push_back("transversal: " + tr.notes[1]);
  if (!rt.witness.empty() && !tr.witness.empty() && rt.witness != tr.witness) c.notes.push_back(tr.witness);
  return c;
}

}  // namespace detail

inline bool needs_geometry(const Scene& s) {
  for (const auto& id : s.checks)
    if (id != "metallic-validate" && id != "audit-nonexistence") return true;
  return s.claims.has_value() || !s.sections.empty();
}

inline Report run(const Scene& s, const RunOptions& opt = {}) {
  Report rep;
  Json& b = rep.body;
  const std::string canonical = serialize_scene(s);
  b["tool"] = "lightlike-lab";
  b["version"] = LIGHTLIKE_VERSION;
  b["scene_digest"] = "fnv1a64:" + fnv1a64(canonical);
  b["seed"] = opt.seed;
  if (!s.name.empty()) b["scene"] = s.name;

  Json notices = Json::array();
  if (s.params.p == 0)
    notices.push_back("p = 0 lies outside the positive-integer range usually assumed for metallic structures; "
                      "results are reported as computed");
  bool wants_definition = false;
  for (const auto& id : s.checks)
    if (id.rfind("def-", 0) == 0 || id.rfind("thm-", 0) == 0 || id == "prop-4.2") wants_definition = true;
  if (s.params.p >= 1 && wants_definition)
    notices.push_back("p >= 1: compatibility gives g(J xi, J xi) = p g(J xi, xi), so J Rad cannot pair with Rad "
                      "while null; both definitions are expected to fail");

  MetallicStructure st = s.structure();
  SignatureSpace space(s.signature);
  PolynomialImmersion f = s.immersion();
  FrameOptions fo;
  if (s.screen) fo.screen_override = *s.screen;

  std::vector<std::unique_ptr<InducedGeometry>> geos;
  Json points = Json::array();
  double max_dev = 0;
  bool rank_agrees = true;
  if (needs_geometry(s)) {
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      AdaptedFrame fr;
      try {
        fr = build_frame(f, s.points[k], space, &st, fo);
      } catch (const Error& e) {
        switch (e.kind()) {
          case ErrorKind::ScreenInvalid:
            invalid("/screen", e.what());
          case ErrorKind::ImmersionRankDrop:
          case ErrorKind::RankNotLocallyConstant:
          case ErrorKind::ShapeError:
            invalid("/points/" + std::to_string(k), e.what());
          default:
            throw;
        }
      }
      Json pj;
      pj["point"] = detail::vec_json(s.points[k]);
      pj["radical_rank"] = fr.r;
      pj["case"] = to_string(fr.kind);
      Json jac = Json::array(), gr = Json::array(), rad = Json::array(), scr = Json::array();
      for (const auto& w : fr.jacobian) jac.push_back(detail::vec_json(w));
      QMatrix g = gram(fr.eps, fr.jacobian);
      for (std::size_t i = 0; i < g.rows(); ++i) gr.push_back(detail::vec_json(g.row(i)));
      for (const auto& x : fr.xi_chart) rad.push_back(detail::vec_json(x));
      for (const auto& x : fr.screen_chart) scr.push_back(detail::vec_json(x));
      pj["tangent_frame"] = jac;
      pj["gram"] = gr;
      pj["radical"] = rad;
      pj["screen"] = scr;
      points.push_back(pj);

      if (opt.float_check) {
        FloatCheck fc = float_check(s, fr, k);
        max_dev = std::max(max_dev, fc.max_deviation);
        rank_agrees = rank_agrees && fc.rank_agrees;
      }

      std::string at = "point " + std::to_string(k + 1);
      if (s.claims) {
        if (s.claims->radical_rank && *s.claims->radical_rank != fr.r)
          notices.push_back(at + ": radical rank claimed " + std::to_string(*s.claims->radical_rank) + ", computed " +
                            std::to_string(fr.r));
        if (s.claims->xi) {
          QVec res = g * *s.claims->xi;
          if (!is_zero_vec(res))
            notices.push_back(at + ": claimed xi " + format(*s.claims->xi) +
                              " is not in the radical; Gram times xi = " + format(res));
        }
      }
      for (const auto& [name, comps] : s.sections) {
        QVec v = evaluate(comps, s.points[k]);
        bool ok = name == "xi" ? fr.rad.contains(v)
                               : name == "Z" ? QSubspace::span(fr.n, fr.str).sum(fr.rad).contains(v) && !fr.rad.contains(v)
                                             : !fr.tangent.contains(v);
        if (!ok) invalid("/sections/" + name, at + ": section value " + format(v) + " is not admissible");
      }
      geos.push_back(std::make_unique<InducedGeometry>(f, std::move(fr)));
    }
    b["points"] = points;
  }

  Json checks = Json::array();
  std::size_t holds = 0, fails = 0, na = 0, inconsistent = 0;
  for (const auto& id : s.checks) {
    std::vector<CheckResult> per_point;
    if (id == "metallic-validate") {
      per_point.push_back(detail::metallic_check(s));
    } else if (id == "audit-nonexistence") {
      per_point.push_back(detail::nonexistence_check(s, opt.seed));
    } else {
      for (const auto& geo : geos) {
        Classifier cl(*geo, st);
        per_point.push_back(detail::point_check(id, cl));
      }
    }

    // Scene level: HOLDS needs HOLDS everywhere; any FAILS wins.
    Outcome verdict = Outcome::Holds;
    std::optional<Outcome> oracle;
    bool consistent = true;
    std::string witness, reference;
    for (std::size_t k = 0; k < per_point.size(); ++k) {
      const auto& c = per_point[k];
      if (!c.reference.empty()) reference = c.reference;
      consistent = consistent && c.consistent();
      if (c.verdict == Outcome::Fails) {
        if (verdict != Outcome::Fails && !c.witness.empty())
          witness = (per_point.size() > 1 ? "point " + std::to_string(k + 1) + ": " : std::string()) + c.witness;
        verdict = Outcome::Fails;
      } else if (c.verdict == Outcome::NotApplicable && verdict == Outcome::Holds) {
        verdict = Outcome::NotApplicable;
      }
      if (c.oracle) {
        Outcome o = *c.oracle;
        if (!oracle)
          oracle = o;
        else if (o == Outcome::Fails || *oracle == Outcome::Fails)
          oracle = Outcome::Fails;
        else if (o == Outcome::NotApplicable)
          oracle = Outcome::NotApplicable;
      }
    }
    if (reference.empty()) {
      for (const auto& info : check_catalog())
        if (info.id == id) reference = info.summary;
    }
    Json cj;
    cj["name"] = id;
    cj["reference"] = reference;
    cj["verdict"] = to_string(verdict);
    if (oracle) cj["oracle"] = to_string(*oracle);
    cj["consistent"] = consistent;
    if (!witness.empty()) cj["witness"] = witness;
    if (per_point.size() == 1 && (id == "metallic-validate" || id == "audit-nonexistence")) {
      if (!per_point[0].notes.empty()) cj["notes"] = per_point[0].notes;
    } else {
      Json pts = Json::array();
      for (const auto& c : per_point) pts.push_back(detail::result_json(c));
      cj["points"] = pts;
    }
    checks.push_back(cj);
    if (!consistent) {
      ++inconsistent;
      notices.push_back(id + ": criterion and oracle disagree or a consequence failed");
    }
    if (verdict == Outcome::Holds) ++holds;
    if (verdict == Outcome::Fails) ++fails;
    if (verdict == Outcome::NotApplicable) ++na;
  }
  b["checks"] = checks;

  if (opt.float_check && !geos.empty()) {
    bool within = max_dev <= 1e-9;
    b["float_check"] = {{"tolerance", "1e-9"},
                        {"max_abs_deviation", detail::sci(max_dev)},
                        {"within_tolerance", within},
                        {"rank_agrees", rank_agrees}};
    if (!within || !rank_agrees) {
      ++inconsistent;
      notices.push_back("floating oracle deviates from the exact computation");
    }
  }
  b["notices"] = notices;
  b["summary"] = {{"holds", holds}, {"fails", fails}, {"not_applicable", na}, {"inconsistent", inconsistent}};
  rep.exit_code = inconsistent ? 3 : fails ? 1 : 0;
  return rep;
}

}  // namespace lightlike
