#include "crossratio/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "crossratio/errors.hpp"

namespace crossratio {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ValidationError("malformed number '" + std::string(whole) + "'");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ValidationError("malformed number '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      throw ValidationError("malformed number '" + std::string(whole) + "'");
    }
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_rational(parse_integer(text.substr(0, slash), text), parse_integer(text.substr(slash + 1), text));
  }
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = parse_integer(text.substr(e + 1), text).get_si();
  }
  bool negative = !mantissa.empty() && mantissa[0] == '-';
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) mantissa.remove_prefix(1);
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_digits = static_cast<long>(mantissa.size() - dot - 1);
  } else {
    digits = std::string(mantissa);
  }
  if (digits.empty()) throw ValidationError("malformed number '" + std::string(text) + "'");
  Integer m = parse_integer(digits, text);
  if (negative) m = -m;
  long shift = exponent - frac_digits;
  if (shift >= 0) return make_rational(m * pow10(static_cast<unsigned long>(shift)));
  return make_rational(m, pow10(static_cast<unsigned long>(-shift)));
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational dyadic_floor(const Rational& q, unsigned bits) {
  Integer scale = Integer(1) << bits;
  return make_rational(floor(q * scale), scale);
}

Rational dyadic_ceil(const Rational& q, unsigned bits) {
  Integer scale = Integer(1) << bits;
  return make_rational(ceil(q * scale), scale);
}

unsigned bits_for(const Rational& eps) {
  if (eps <= 0) throw DomainError("precision target must be positive");
  unsigned k = 0;
  Rational w = 1;
  while (w > eps) {
    w /= 2;
    ++k;
  }
  return k;
}

unsigned magnitude_bits(const Rational& q) {
  Integer f = floor(abs(q));
  auto n = static_cast<unsigned>(mpz_sizeinbase(f.get_mpz_t(), 2));
  return n == 0 ? 1 : n;
}

std::string to_decimal(const Rational& q, int digits) {
  Integer scale = pow10(static_cast<unsigned long>(digits));
  Rational scaled = abs(q) * scale + Rational(1, 2);
  Integer n = floor(scaled);
  std::string s = n.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (q < 0 && n != 0) s.insert(0, "-");
  return s;
}

Rational default_precision() {
  const char* env = std::getenv("CROSSRATIO_PRECISION");
  if (env == nullptr || *env == '\0') return parse_rational("1e-12");
  Rational eps = parse_rational(env);
  if (eps <= 0) throw ValidationError("CROSSRATIO_PRECISION must be positive");
  return eps;
}

}  // namespace crossratio
