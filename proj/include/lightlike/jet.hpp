#pragma once

// First-order jets: value plus partial derivatives in the chart variables,
// with all products of infinitesimals dropped. Frame constructions run over
// jets so that sections come out with their first derivatives attached.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "lightlike/scalar.hpp"

namespace lightlike {

template <class S>
class Jet {
 public:
  Jet() = default;
  Jet(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Jet(S v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Jet(S v, std::vector<S> d) : value_(std::move(v)), d_(std::move(d)) {}

  static Jet variable(S v, std::size_t index, std::size_t dims) {
    std::vector<S> d(dims);
    d[index] = S(1);
    return Jet(std::move(v), std::move(d));
  }

  const S& value() const { return value_; }
  /// Partial derivative k (zero when not stored).
  S d(std::size_t k) const { return k < d_.size() ? d_[k] : S{}; }
  const std::vector<S>& partials() const { return d_; }
  std::size_t dims() const { return d_.size(); }

  bool is_zero() const {
    if (!lightlike::is_zero(value_)) return false;
    return std::all_of(d_.begin(), d_.end(), [](const S& x) { return lightlike::is_zero(x); });
  }

  Jet operator-() const {
    Jet r = *this;
    r.value_ = -r.value_;
    for (auto& x : r.d_) x = -x;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    value_ += o.value_;
    grow(o.d_.size());
    for (std::size_t k = 0; k < o.d_.size(); ++k) d_[k] += o.d_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    value_ -= o.value_;
    grow(o.d_.size());
    for (std::size_t k = 0; k < o.d_.size(); ++k) d_[k] -= o.d_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    std::size_t n = std::max(d_.size(), o.d_.size());
    std::vector<S> d(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k < d_.size() && !lightlike::is_zero(d_[k])) d[k] += d_[k] * o.value_;
      if (k < o.d_.size() && !lightlike::is_zero(o.d_[k])) d[k] += value_ * o.d_[k];
    }
    value_ *= o.value_;
    d_ = std::move(d);
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    // (v + e dv) / (w + e dw) = v/w + e (dv w - v dw) / w^2
    S inv = S(1) / o.value_;
    S quotient = value_ * inv;
    std::size_t n = std::max(d_.size(), o.d_.size());
    std::vector<S> nd(n);
    for (std::size_t k = 0; k < n; ++k) {
      S num = d(k) - quotient * o.d(k);
      if (!lightlike::is_zero(num)) nd[k] = num * inv;
    }
    value_ = std::move(quotient);
    d_ = std::move(nd);
    return *this;
  }

  friend Jet operator+(Jet x, const Jet& y) { return x += y; }
  friend Jet operator-(Jet x, const Jet& y) { return x -= y; }
  friend Jet operator*(Jet x, const Jet& y) { return x *= y; }
  friend Jet operator/(Jet x, const Jet& y) { return x /= y; }

  friend bool operator==(const Jet& x, const Jet& y) { return (x - y).is_zero(); }

 private:
  void grow(std::size_t n) {
    if (d_.size() < n) d_.resize(n);
  }

  S value_{};
  std::vector<S> d_;
};

using QJet = Jet<QuadScalar>;

template <class S>
bool is_zero(const Jet<S>& x) {
  return x.is_zero();
}

/// A jet is invertible iff its value is.
template <class S>
bool is_unit(const Jet<S>& x) {
  return is_unit(x.value());
}

/// Directional derivative sum_k w_k d_k.
template <class S>
S directional(const Jet<S>& x, const std::vector<S>& w) {
  S r{};
  for (std::size_t k = 0; k < w.size(); ++k) {
    S dk = x.d(k);
    if (!is_zero(dk) && !is_zero(w[k])) r += w[k] * dk;
  }
  return r;
}

template <class S>
std::vector<S> values(const std::vector<Jet<S>>& v) {
  std::vector<S> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.value());
  return r;
}

template <class S>
std::vector<S> directional(const std::vector<Jet<S>>& v, const std::vector<S>& w) {
  std::vector<S> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(directional(x, w));
  return r;
}

template <class S>
std::vector<Jet<S>> constant_jets(const std::vector<S>& v) {
  return std::vector<Jet<S>>(v.begin(), v.end());
}

}  // namespace lightlike
