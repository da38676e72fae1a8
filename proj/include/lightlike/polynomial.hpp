#pragma once

// Multivariate polynomials with QuadScalar coefficients, plus the text
// parser shared by scalar literals and immersion/field components.
//
// Grammar (whitespace separates juxtaposed factors, i.e. implicit product):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'|'/'] factor | factor)*
//   factor := atom ['^' integer]
//   atom   := integer | 's' | 'u'<k> | '(' expr ')'
// Division is only allowed by non-zero constants.

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lightlike/errors.hpp"
#include "lightlike/jet.hpp"
#include "lightlike/linalg.hpp"
#include "lightlike/scalar.hpp"

namespace lightlike {

class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  Polynomial() = default;
  explicit Polynomial(std::size_t vars) : vars_(vars) {}
  Polynomial(std::size_t vars, const QuadScalar& c) : vars_(vars) {
    if (!c.is_zero()) terms_[Exponents(vars, 0)] = c;
  }

  static Polynomial variable(std::size_t vars, std::size_t index) {
    if (index >= vars) fail(ErrorKind::ShapeError, "variable index out of range");
    Polynomial p(vars);
    Exponents e(vars, 0);
    e[index] = 1;
    p.terms_[e] = QuadScalar(1);
    return p;
  }

  std::size_t vars() const { return vars_; }
  const std::map<Exponents, QuadScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && degree() == 0); }

  QuadScalar constant() const {
    auto it = terms_.find(Exponents(vars_, 0));
    return it == terms_.end() ? QuadScalar{} : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.vars_);
        for (std::size_t i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend Polynomial operator*(const QuadScalar& c, const Polynomial& p) { return Polynomial(p.vars_, c) * p; }

  Polynomial pow(unsigned k) const {
    Polynomial r(vars_, QuadScalar(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    if (var >= vars_) fail(ErrorKind::ShapeError, "variable index out of range");
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents ne = e;
      --ne[var];
      r.add_term(ne, c * QuadScalar(static_cast<long>(e[var])));
    }
    return r;
  }

  template <class T>
  T evaluate(const Vec<T>& point) const {
    if (point.size() != vars_) fail(ErrorKind::ShapeError, "evaluation point has wrong dimension");
    T sum{};
    for (const auto& [e, c] : terms_) {
      T term = T(c);
      for (std::size_t i = 0; i < vars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
      sum += term;
    }
    return sum;
  }

  /// Value and gradient at the point.
  QJet jet(const QVec& point) const {
    QVec grad(vars_);
    for (std::size_t k = 0; k < vars_; ++k) grad[k] = derivative(k).evaluate(point);
    return QJet(evaluate(point), std::move(grad));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.vars_ != vars_) fail(ErrorKind::ShapeError, "polynomials over different variable counts");
  }
  void add_term(const Exponents& e, const QuadScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::size_t vars_ = 0;
  std::map<Exponents, QuadScalar> terms_;
};

/// Canonical text: terms by descending total degree then exponent order,
/// coefficient in canonical scalar syntax (parenthesized when it has two parts).
inline std::string format(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Polynomial::Exponents, QuadScalar>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    unsigned dx = 0, dy = 0;
    for (auto e : x.first) dx += e;
    for (auto e : y.first) dy += e;
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "u" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    QuadScalar coef = c;
    bool negative = false;
    // Pull a leading minus out of single-part coefficients.
    if (coef.is_rational() ? sgn(coef.a()) < 0 : (sgn(coef.a()) == 0 && sgn(coef.b()) < 0)) {
      negative = true;
      coef = -coef;
    }
    std::string cs = format(coef);
    bool two_part = !coef.is_rational() && sgn(coef.a()) != 0;
    if (two_part) cs = "(" + cs + ")";
    std::string term;
    if (mono.empty()) {
      term = cs;
    } else if (coef == QuadScalar(1)) {
      term = mono;
    } else {
      if (!two_part && !coef.is_rational()) {
        // "b s" -> "b*s"
        std::string t = cs;
        auto pos = t.find(" s");
        if (pos != std::string::npos) t.replace(pos, 2, "*s");
        cs = t;
      }
      term = cs + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::size_t vars, const MetallicParams& params)
      : text_(text), vars_(vars), params_(params) {}

  Polynomial parse() {
    skip();
    if (pos_ >= text_.size()) error("empty expression");
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool starts_atom() {
    skip();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 's' || c == 'u' || c == '(';
  }

  Polynomial expr() {
    bool neg = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      neg = true;
    }
    Polynomial acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        ++pos_;
        Polynomial d = factor();
        if (!d.is_constant() || d.constant().is_zero()) error("division only by non-zero constants");
        acc = (QuadScalar(1) / d.constant()) * acc;
      } else if (starts_atom()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (k > 16) error("exponent too large");
      base = base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer v(std::string(text_.substr(start, pos_ - start)));
      return Polynomial(vars_, QuadScalar(Rational(v)));
    }
    if (c == 's') {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        error("unknown identifier");
      return Polynomial(vars_, QuadScalar::sigma(params_));
    }
    if (c == 'u') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected variable index after 'u'");
      unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (k < 1 || k > vars_) error("variable u" + std::to_string(k) + " out of range");
      return Polynomial::variable(vars_, k - 1);
    }
    error("unknown token");
  }

  std::string_view text_;
  std::size_t vars_;
  MetallicParams params_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, std::size_t vars, const MetallicParams& params) {
  params.validate();
  return detail::ExpressionParser(text, vars, params).parse();
}

/// Scalar literal such as "1/2 + 1/2 s"; rejects anything non-constant.
inline QuadScalar parse_scalar(std::string_view text, const MetallicParams& params) {
  Polynomial p = parse_polynomial(text, 0, params);
  return p.constant();
}

inline QVec evaluate(const std::vector<Polynomial>& components, const QVec& point) {
  QVec r;
  r.reserve(components.size());
  for (const auto& c : components) r.push_back(c.evaluate(point));
  return r;
}

}  // namespace lightlike
