#pragma once

// Exact arithmetic in the quadratic field Q(sigma), sigma^2 = p*sigma + q,
// with sigma the positive root (p + sqrt(p^2 + 4q)) / 2.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "lightlike/errors.hpp"

namespace lightlike {

using Rational = mpq_class;
using Integer = mpz_class;

struct MetallicParams {
  std::int64_t p = 1;
  std::int64_t q = 1;

  friend bool operator==(const MetallicParams&, const MetallicParams&) = default;

  void validate() const {
    if (p < 0) fail(ErrorKind::ParamError, "p must be non-negative");
    if (q < 1) fail(ErrorKind::ParamError, "q must be at least 1");
    if (p + q < 2) fail(ErrorKind::ParamError, "p + q must be at least 2");
    if (p > 1'000'000 || q > 1'000'000) fail(ErrorKind::ParamError, "p, q out of supported range");
  }

  Integer discriminant() const { return Integer(p) * p + Integer(4) * q; }

  /// sigma as a rational when p^2 + 4q is a perfect square.
  std::optional<Rational> rational_sigma() const {
    Integer d = discriminant();
    if (!mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Integer s = sqrt(d);
    Rational r(Integer(p) + s, Integer(2));
    r.canonicalize();
    return r;
  }
};

/// a + b*sigma with rational a, b. Values with b == 0 are field-agnostic
/// ("unbound") and mix freely with any field; two bound values must share
/// their parameters.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  QuadScalar(Rational a, Rational b, const MetallicParams& params)
      : a_(std::move(a)), b_(std::move(b)), params_(params), bound_(true) {
    params.validate();
    a_.canonicalize();
    b_.canonicalize();
    normalize();
  }

  static QuadScalar sigma(const MetallicParams& params) { return QuadScalar(0, 1, params); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool bound() const { return bound_; }
  const MetallicParams& params() const { return params_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadScalar operator-() const {
    QuadScalar r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  QuadScalar& operator+=(const QuadScalar& o) {
    adopt(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadScalar& operator-=(const QuadScalar& o) {
    adopt(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadScalar& operator*=(const QuadScalar& o) {
    adopt(o);
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
      a_ *= o.a_;
      return *this;
    }
    // (a1 + b1 s)(a2 + b2 s) = a1 a2 + q b1 b2 + (a1 b2 + a2 b1 + p b1 b2) s
    Rational bb = b_ * o.b_;
    Rational na = a_ * o.a_ + bb * params_.q;
    Rational nb = a_ * o.b_ + o.a_ * b_ + bb * params_.p;
    a_ = std::move(na);
    b_ = std::move(nb);
    normalize();
    return *this;
  }
  QuadScalar& operator/=(const QuadScalar& o) {
    if (o.is_zero()) fail(ErrorKind::DivByZero, "division by zero in Q(sigma)");
    adopt(o);
    if (sgn(o.b_) == 0) {
      a_ /= o.a_;
      b_ /= o.a_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

  /// Galois conjugate a + b(p - sigma).
  QuadScalar conjugate() const {
    QuadScalar r = *this;
    if (bound_) {
      r.a_ = a_ + b_ * params_.p;
      r.b_ = -b_;
    }
    return r;
  }

  /// x * conjugate(x) = a^2 + a b p - b^2 q.
  Rational norm() const {
    if (!bound_) return a_ * a_;
    return a_ * a_ + a_ * b_ * params_.p - b_ * b_ * params_.q;
  }

  /// Sign under the real embedding.
  int sign() const {
    if (sgn(b_) == 0) return sgn(a_);
    // a + b s = b (s - t) with t = -a/b; s > t iff chi(t) < 0 or (chi(t) > 0 and t < p/2),
    // where chi(t) = t^2 - p t - q has roots p - s < p/2 < s.
    Rational t = -a_ / b_;
    Rational chi = t * t - t * params_.p - params_.q;
    int above;
    if (sgn(chi) < 0) {
      above = 1;
    } else if (sgn(chi) > 0) {
      above = (2 * t < Rational(params_.p)) ? 1 : -1;
    } else {
      fail(ErrorKind::InternalInconsistency, "rational root of an irreducible quadratic");
    }
    return above * sgn(b_);
  }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    if (x.bound_ && y.bound_ && sgn(x.b_) != 0 && !(x.params_ == y.params_)) return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadScalar& x, const QuadScalar& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Real value with high-precision floating arithmetic; `bits` of mantissa.
  mpf_class to_mpf(unsigned bits) const {
    mpf_class av(a_, bits);
    if (sgn(b_) == 0) return av;
    mpf_class d(Integer(params_.discriminant()), bits);
    mpf_class s(0, bits);
    s = sqrt(d);
    mpf_class sig(0, bits);
    sig = (mpf_class(params_.p, bits) + s) / 2;
    mpf_class bv(b_, bits);
    mpf_class r(0, bits);
    r = av + bv * sig;
    return r;
  }

  double to_double() const { return to_mpf(256).get_d(); }

 private:
  void adopt(const QuadScalar& o) {
    if (!o.bound_) return;
    if (!bound_) {
      params_ = o.params_;
      bound_ = true;
      return;
    }
    if (!(params_ == o.params_) && (sgn(b_) != 0 || sgn(o.b_) != 0)) {
      fail(ErrorKind::ParamError, "mixing scalars from different metallic fields");
    }
    if (sgn(b_) == 0) params_ = o.params_;
  }

  // Square discriminant: sigma is rational, fold b into a.
  void normalize() {
    if (!bound_ || sgn(b_) == 0) return;
    if (auto rs = params_.rational_sigma()) {
      a_ += b_ * *rs;
      b_ = 0;
    }
  }

  Rational a_{0};
  Rational b_{0};
  MetallicParams params_{};
  bool bound_ = false;
};

inline QuadScalar metallic_number(const MetallicParams& params) {
  params.validate();
  return QuadScalar::sigma(params);
}

inline int sign(const QuadScalar& x) { return x.sign(); }
inline bool is_zero(const QuadScalar& x) { return x.is_zero(); }
inline bool is_unit(const QuadScalar& x) { return !x.is_zero(); }

enum class ArithOp { Add, Sub, Mul, Div };

inline QuadScalar arith(const QuadScalar& x, const QuadScalar& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  return {};
}

inline std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Canonical text: "a", "b s", or "a + b s" / "a - b s" (coefficient 1 omitted).
inline std::string format(const QuadScalar& x) {
  const Rational& a = x.a();
  const Rational& b = x.b();
  if (sgn(b) == 0) return format_rational(a);
  auto coef = [](const Rational& c) -> std::string {
    if (c == 1) return "s";
    return format_rational(c) + " s";
  };
  if (sgn(a) == 0) {
    if (b == -1) return "-s";
    return coef(b);
  }
  if (sgn(b) > 0) return format_rational(a) + " + " + coef(b);
  return format_rational(a) + " - " + coef(Rational(-b));
}

inline std::ostream& operator<<(std::ostream& os, const QuadScalar& x) { return os << format(x); }

struct Decimal {
  std::string text;
  double value = 0.0;
};

/// Decimal approximation within 10^-precision (rounded to nearest).
inline Decimal embed(const QuadScalar& x, unsigned precision) {
  unsigned bits = 64 + precision * 4;
  mpf_class v = x.to_mpf(bits);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, precision);
  mpf_class scaled(0, bits);
  scaled = v * mpf_class(scale, bits);
  bool neg = sgn(scaled) < 0;
  if (neg) scaled = -scaled;
  mpf_class rounded(0, bits);
  rounded = floor(scaled + mpf_class(0.5, bits));
  Integer digits(rounded);
  std::string s = digits.get_str();
  if (precision > 0) {
    if (s.size() <= precision) s.insert(0, precision + 1 - s.size(), '0');
    s.insert(s.size() - precision, ".");
  } else {
    s += ".0";
  }
  if (neg && digits != 0) s.insert(0, "-");
  return Decimal{s, v.get_d() == 0.0 && !neg ? 0.0 : v.get_d()};
}

}  // namespace lightlike
