#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "crossratio/rational.hpp"

namespace crossratio {

/// A closed rational interval [lo, hi] known to contain one real number,
/// optionally paired with a procedure that narrows it on demand.
///
/// Zero-width enclosures are legal and denote exact rationals. Values are
/// immutable; refinement returns a new Enclosure sharing the same source, so
/// enclosures can be handed to concurrent workers freely.
class Enclosure {
 public:
  /// Returns an interval of width about 2^-bits containing the value.
  using Approximator = std::function<std::pair<Rational, Rational>(unsigned bits)>;
  /// Sign of a continuous function at a point; the enclosed value is its
  /// unique zero in the bracket.
  using SignOracle = std::function<int(const Rational&)>;

  /// Refinement engine behind an Enclosure.
  class Source {
   public:
    virtual ~Source() = default;
    /// Narrows `current` to width <= 2^-bits; never excludes the value.
    virtual Enclosure narrow(const Enclosure& current, unsigned bits) const = 0;
  };

  static constexpr unsigned kMaxBits = 16384;

  Enclosure() = default;
  Enclosure(const Rational& point);  // NOLINT: exact rationals convert implicitly
  Enclosure(const Rational& lo, const Rational& hi);

  static Enclosure from_approximator(Approximator approx, unsigned start_bits = 24);
  /// Requires sign(lo) * sign(hi) < 0, or lo == hi.
  static Enclosure from_bisection(SignOracle sign_at, const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }
  bool refinable() const { return source_ != nullptr || is_point(); }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  unsigned level() const { return level_; }

  /// One refinement step: width at most half the current width.
  Enclosure halved() const;
  /// Width <= 2^-bits.
  Enclosure to_bits(unsigned bits) const;
  /// Width <= eps.
  Enclosure to_width(const Rational& eps) const;

  double to_double() const;

 private:
  friend class ApproximatorSource;
  friend class BisectionSource;

  Rational lo_ = 0;
  Rational hi_ = 0;
  std::shared_ptr<const Source> source_;
  unsigned level_ = 0;
};

/// Width <= eps, same enclosed value. eps must be positive.
Enclosure refine(const Enclosure& e, const Rational& eps);

Enclosure operator-(const Enclosure& a);
Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
/// Throws DomainError when b is exactly zero, PrecisionExhausted when b
/// cannot be separated from zero.
Enclosure operator/(const Enclosure& a, const Enclosure& b);
Enclosure abs(const Enclosure& a);
Enclosure pow(const Enclosure& a, unsigned k);

/// Enclosure of the minimum / maximum of two enclosed values.
Enclosure min(const Enclosure& a, const Enclosure& b);
Enclosure max(const Enclosure& a, const Enclosure& b);

/// Sign of the enclosed value, refining up to 2^-max_bits. Zero only for
/// exact zero. Throws PrecisionExhausted otherwise.
int certified_sign(const Enclosure& a, unsigned max_bits = 256);
/// Like certified_sign but returns 0 instead of throwing when undecided.
int sign_if_decided(const Enclosure& a, unsigned max_bits = 256);

Enclosure log(const Enclosure& x);
Enclosure exp(const Enclosure& x);
Enclosure sqrt(const Enclosure& x);

/// Raw rational bounds for elementary functions at working precision `bits`.
namespace bounds {
std::pair<Rational, Rational> log(const Rational& x, unsigned bits);
std::pair<Rational, Rational> exp(const Rational& x, unsigned bits);
std::pair<Rational, Rational> sqrt(const Rational& x, unsigned bits);
}  // namespace bounds

/// Decimal rendering of an enclosure: refined until rounding is stable
/// enough for `digits` places, then the midpoint is rounded.
std::string to_decimal(const Enclosure& e, int digits);

}  // namespace crossratio
