#pragma once

#include <optional>
#include <string>
#include <variant>

#include "crossratio/enclosure.hpp"
#include "crossratio/quadext.hpp"

namespace crossratio {

/// A real number that is exact when it lives in a quadratic field and a
/// certified enclosure otherwise. Arithmetic stays exact while both operands
/// are exact and share a field, and falls back to enclosures after that.
class Real {
 public:
  Real() : value_(QuadExt(0)) {}
  Real(const QuadExt& x) : value_(x) {}      // NOLINT
  Real(const Rational& x) : value_(QuadExt(x)) {}  // NOLINT
  Real(long x) : value_(QuadExt(x)) {}       // NOLINT
  Real(const Enclosure& e);                  // NOLINT: point enclosures become exact

  bool is_exact() const { return std::holds_alternative<QuadExt>(value_); }
  const QuadExt* exact() const { return std::get_if<QuadExt>(&value_); }
  /// Enclosure view; exact values convert losslessly (refinable).
  Enclosure enclosure() const;
  double to_double() const;
  std::string to_decimal(int digits) const;

  friend Real operator+(const Real& x, const Real& y);
  friend Real operator-(const Real& x, const Real& y);
  friend Real operator*(const Real& x, const Real& y);
  friend Real operator/(const Real& x, const Real& y);
  Real operator-() const;

 private:
  std::variant<QuadExt, Enclosure> value_;
};

Real abs(const Real& x);
/// Sign, certified by refinement when inexact.
int sign(const Real& x);

}  // namespace crossratio
