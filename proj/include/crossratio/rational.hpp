#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace crossratio {

using Integer = mpz_class;
/// GMP rationals are kept canonical (lowest terms, positive denominator) by
/// every arithmetic operation; constructors below canonicalize explicitly.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den = 1);

/// Accepts "p", "p/q", "1.25", "-3e-4", "1e-12".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Largest multiple of 2^-bits not above q / smallest not below q.
Rational dyadic_floor(const Rational& q, unsigned bits);
Rational dyadic_ceil(const Rational& q, unsigned bits);

/// Smallest k with 2^-k <= eps (eps > 0).
unsigned bits_for(const Rational& eps);

/// Number of bits of |floor(q)|, at least 1.
unsigned magnitude_bits(const Rational& q);

/// Decimal rendering rounded half-away-from-zero to `digits` fractional digits.
std::string to_decimal(const Rational& q, int digits);

inline int sign(const Rational& q) { return sgn(q); }

/// Default enclosure target width: CROSSRATIO_PRECISION when set, else 1e-12.
Rational default_precision();

}  // namespace crossratio
