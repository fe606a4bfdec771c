#pragma once

#include <iosfwd>
#include <string>

#include "crossratio/enclosure.hpp"
#include "crossratio/rational.hpp"

namespace crossratio {

/// Writes n = k^2 * d with d squarefree and k > 0. n must be positive.
struct SquarefreeSplit {
  Integer square_root;  // k
  Integer kernel;       // d
};
SquarefreeSplit squarefree_split(const Integer& n);

bool is_squarefree(const Integer& n);

/// An element a + b√d of the real quadratic field Q(√d).
///
/// d is squarefree and at least 2 whenever b != 0. An element with b == 0 is
/// a rational and combines with elements of any field; two elements with
/// nonzero irrational parts must share d.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& a);  // NOLINT: rationals embed implicitly
  QuadExt(long a) : QuadExt(Rational(a)) {}  // NOLINT
  QuadExt(const Rational& a, const Rational& b, const Integer& d);

  /// Exact √q for q >= 0.
  static QuadExt sqrt_of(const Rational& q);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  /// 1 for rationals.
  const Integer& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  QuadExt conjugate() const;
  /// a^2 - d b^2.
  Rational norm() const;
  int sign() const;

  QuadExt& operator+=(const QuadExt& y);
  QuadExt& operator-=(const QuadExt& y);
  QuadExt& operator*=(const QuadExt& y);
  QuadExt& operator/=(const QuadExt& y);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  QuadExt operator-() const;

  friend bool operator==(const QuadExt& x, const QuadExt& y);
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return !(y < x); }
  friend bool operator>=(const QuadExt& x, const QuadExt& y) { return !(x < y); }

  Enclosure to_enclosure() const;
  double to_double() const;
  std::string to_string() const;

 private:
  Rational a_ = 0;
  Rational b_ = 0;
  Integer d_ = 1;
};

QuadExt abs(const QuadExt& x);
/// x^n; negative n divides (DomainError at zero).
QuadExt pow(const QuadExt& x, int n);
std::ostream& operator<<(std::ostream& os, const QuadExt& x);

}  // namespace crossratio
