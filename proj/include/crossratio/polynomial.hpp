#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crossratio/errors.hpp"
#include "crossratio/rational.hpp"

namespace crossratio {

/// Dense univariate polynomial over a field T, coefficients stored from the
/// constant term upward with no trailing zeros (the zero polynomial is empty).
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial monomial(const T& coeff, std::size_t power) {
    std::vector<T> c(power + 1, T(0));
    c[power] = coeff;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& leading() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
  }

  template <class X>
  X operator()(const X& x) const {
    X acc = X(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    std::vector<T> c = c_;
    T lead = c.back();
    for (auto& x : c) x /= lead;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<T> c(std::max(p.c_.size(), q.c_.size()), T(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(i) + q.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    std::vector<T> c(std::max(p.c_.size(), q.c_.size()), T(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(i) - q.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<T> c(p.c_.size() + q.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const T& s, const Polynomial& p) {
    std::vector<T> c = p.c_;
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.c_ == q.c_; }
  friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

  /// Euclidean division p = q*d + r with deg r < deg d.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& p, const Polynomial& d) {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<T> r = p.c_;
    long dd = d.degree();
    if (p.degree() < dd) return {Polynomial(), p};
    std::vector<T> q(static_cast<std::size_t>(p.degree() - dd + 1), T(0));
    for (long i = p.degree(); i >= dd; --i) {
      T f = r[static_cast<std::size_t>(i)] / d.leading();
      q[static_cast<std::size_t>(i - dd)] = f;
      for (long j = 0; j <= dd; ++j) r[static_cast<std::size_t>(i - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
      const T& a = c_[static_cast<std::size_t>(i)];
      if (a == T(0)) continue;
      if (!first) os << " + ";
      first = false;
      bool unit = a == T(1) && i > 0;
      if (!unit) os << "(" << a << ")";
      if (i > 0) os << (unit ? "" : "*") << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// The polynomial of degree < n through (xs[i], ys[i]); xs distinct.
template <class T>
Polynomial<T> interpolate(const std::vector<T>& xs, const std::vector<T>& ys) {
  if (xs.size() != ys.size()) throw ValidationError("interpolation needs as many values as nodes");
  Polynomial<T> acc;
  for (std::size_t s = 0; s < xs.size(); ++s) {
    Polynomial<T> basis{T(1)};
    T denom(1);
    for (std::size_t r = 0; r < xs.size(); ++r) {
      if (r == s) continue;
      basis = basis * Polynomial<T>{-xs[r], T(1)};
      denom *= xs[s] - xs[r];
    }
    acc = acc + (ys[s] / denom) * basis;
  }
  return acc;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Polynomial<T>& p) {
  return os << p.to_string();
}

using RationalPolynomial = Polynomial<Rational>;

}  // namespace crossratio
