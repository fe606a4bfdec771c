#include "crossratio/enclosure.hpp"

#include <algorithm>
#include <utility>

#include "crossratio/errors.hpp"

namespace crossratio {

namespace {

Rational pow2(long e) {
  if (e >= 0) return Rational(Integer(1) << static_cast<unsigned long>(e));
  return make_rational(1, Integer(1) << static_cast<unsigned long>(-e));
}

Rational width_for_bits(unsigned bits) { return pow2(-static_cast<long>(bits)); }

}  // namespace

class ApproximatorSource final : public Enclosure::Source {
 public:
  explicit ApproximatorSource(Enclosure::Approximator approx) : approx_(std::move(approx)) {}

  Enclosure narrow(const Enclosure& current, unsigned bits) const override {
    Rational target = width_for_bits(bits);
    if (current.width() <= target) return current;
    unsigned k = std::max(bits, current.level_ + 1);
    while (k <= Enclosure::kMaxBits) {
      auto [lo, hi] = approx_(k);
      Enclosure next = current;
      next.lo_ = std::max(current.lo_, lo);
      next.hi_ = std::min(current.hi_, hi);
      next.level_ = k;
      if (next.lo_ > next.hi_) throw Error("approximator returned an interval disjoint from the enclosure");
      if (next.width() <= target) return next;
      k += std::max(4u, k / 8);
    }
    throw PrecisionExhausted("enclosure could not reach 2^-" + std::to_string(bits));
  }

  Enclosure build(unsigned start_bits, std::shared_ptr<const Source> self) const {
    auto [lo, hi] = approx_(start_bits);
    Enclosure e(lo, hi);
    e.source_ = std::move(self);
    e.level_ = start_bits;
    return e;
  }

 private:
  Enclosure::Approximator approx_;
};

class BisectionSource final : public Enclosure::Source {
 public:
  explicit BisectionSource(Enclosure::SignOracle sign_at) : sign_at_(std::move(sign_at)) {}

  Enclosure narrow(const Enclosure& current, unsigned bits) const override {
    Rational target = width_for_bits(bits);
    Enclosure e = current;
    if (e.is_point()) return e;
    int s_lo = sign_at_(e.lo_);
    unsigned steps = 0;
    while (e.width() > target) {
      if (++steps > Enclosure::kMaxBits) throw PrecisionExhausted("bisection budget exhausted");
      Rational mid = e.midpoint();
      int s_mid = sign_at_(mid);
      if (s_mid == 0) {
        e.lo_ = mid;
        e.hi_ = mid;
        break;
      }
      if (s_mid == s_lo) {
        e.lo_ = mid;
      } else {
        e.hi_ = mid;
      }
      ++e.level_;
    }
    return e;
  }

 private:
  Enclosure::SignOracle sign_at_;
};

Enclosure::Enclosure(const Rational& point) : lo_(point), hi_(point) {}

Enclosure::Enclosure(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw DomainError("enclosure with lo > hi");
}

Enclosure Enclosure::from_approximator(Approximator approx, unsigned start_bits) {
  auto src = std::make_shared<const ApproximatorSource>(std::move(approx));
  return src->build(start_bits, src);
}

Enclosure Enclosure::from_bisection(SignOracle sign_at, const Rational& lo, const Rational& hi) {
  Enclosure e(lo, hi);
  if (lo == hi) return e;
  int a = sign_at(lo);
  int b = sign_at(hi);
  if (a == 0) return Enclosure(lo);
  if (b == 0) return Enclosure(hi);
  if (a == b) throw DomainError("bisection bracket without sign change");
  e.source_ = std::make_shared<const BisectionSource>(std::move(sign_at));
  return e;
}

Enclosure Enclosure::to_bits(unsigned bits) const {
  if (width() <= width_for_bits(bits)) return *this;
  if (!source_) throw PrecisionExhausted("enclosure is not refinable");
  return source_->narrow(*this, bits);
}

Enclosure Enclosure::halved() const {
  if (is_point()) return *this;
  Rational half = width() / 2;
  return to_width(half);
}

Enclosure Enclosure::to_width(const Rational& eps) const {
  Enclosure e = to_bits(bits_for(eps));
  return e;
}

double Enclosure::to_double() const { return midpoint().get_d(); }

Enclosure refine(const Enclosure& e, const Rational& eps) {
  if (eps <= 0) throw DomainError("refinement target must be positive");
  return e.to_width(eps);
}

namespace {

constexpr unsigned kGuard = 8;

std::pair<Rational, Rational> outward(const Rational& lo, const Rational& hi, unsigned bits) {
  return {dyadic_floor(lo, bits), dyadic_ceil(hi, bits)};
}

unsigned mag(const Enclosure& e) { return std::max(magnitude_bits(e.lo()), magnitude_bits(e.hi())); }

std::pair<Rational, Rational> mul_bounds(const Enclosure& a, const Enclosure& b) {
  Rational p[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

/// Refine until zero is excluded; exact zero is a domain error.
Enclosure separate_from_zero(const Enclosure& b) {
  Enclosure e = b;
  if (e.is_point() && e.lo() == 0) throw DomainError("division by zero");
  for (unsigned k = 8; e.contains(0); k *= 2) {
    if (k > Enclosure::kMaxBits) throw PrecisionExhausted("divisor cannot be separated from zero");
    e = e.to_bits(k);
    if (e.is_point() && e.lo() == 0) throw DomainError("division by zero");
  }
  return e;
}

}  // namespace

Enclosure operator-(const Enclosure& a) {
  if (a.is_point()) return Enclosure(-a.lo());
  return Enclosure::from_approximator(
      [a](unsigned k) {
        Enclosure r = a.to_bits(k);
        return std::pair<Rational, Rational>{-r.hi(), -r.lo()};
      },
      a.level());
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  if (a.is_point() && b.is_point()) return Enclosure(a.lo() + b.lo());
  return Enclosure::from_approximator([a, b](unsigned k) {
    Enclosure x = a.to_bits(k + 1), y = b.to_bits(k + 1);
    return outward(x.lo() + y.lo(), x.hi() + y.hi(), k + kGuard);
  });
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (a.is_point() && b.is_point()) return Enclosure(a.lo() * b.lo());
  unsigned m = mag(a) + mag(b) + 2;
  return Enclosure::from_approximator([a, b, m](unsigned k) {
    Enclosure x = a.to_bits(k + m), y = b.to_bits(k + m);
    auto [lo, hi] = mul_bounds(x, y);
    return outward(lo, hi, k + kGuard);
  });
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  Enclosure d = separate_from_zero(b);
  if (a.is_point() && d.is_point()) return Enclosure(a.lo() / d.lo());
  Rational dmin = std::min(abs(d.lo()), abs(d.hi()));
  unsigned m = mag(a) + 2 * bits_for(dmin) + 4;
  return Enclosure::from_approximator([a, d, m](unsigned k) {
    Enclosure x = a.to_bits(k + m), y = d.to_bits(k + m);
    Enclosure inv(1 / y.hi(), 1 / y.lo());
    auto [lo, hi] = mul_bounds(x, inv);
    return outward(lo, hi, k + kGuard);
  });
}

Enclosure abs(const Enclosure& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  return Enclosure::from_approximator([a](unsigned k) {
    Enclosure x = a.to_bits(k);
    Rational lo = x.lo() >= 0 ? x.lo() : (x.hi() <= 0 ? -x.hi() : Rational(0));
    Rational hi = std::max(abs(x.lo()), abs(x.hi()));
    return std::pair<Rational, Rational>{lo, hi};
  });
}

Enclosure pow(const Enclosure& a, unsigned k) {
  Enclosure r(1);
  Enclosure base = a;
  while (k > 0) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return r;
}

Enclosure min(const Enclosure& a, const Enclosure& b) {
  if (a.hi() <= b.lo()) return a;
  if (b.hi() <= a.lo()) return b;
  return Enclosure::from_approximator([a, b](unsigned k) {
    Enclosure x = a.to_bits(k), y = b.to_bits(k);
    return std::pair<Rational, Rational>{std::min(x.lo(), y.lo()), std::min(x.hi(), y.hi())};
  });
}

Enclosure max(const Enclosure& a, const Enclosure& b) { return -min(-a, -b); }

int sign_if_decided(const Enclosure& a, unsigned max_bits) {
  Enclosure e = a;
  for (unsigned k = 16;; k *= 2) {
    if (e.lo() > 0) return 1;
    if (e.hi() < 0) return -1;
    if (e.is_point()) return 0;
    if (!e.refinable() || k > max_bits) return 2;
    e = e.to_bits(std::min(k, max_bits));
  }
}

int certified_sign(const Enclosure& a, unsigned max_bits) {
  int s = sign_if_decided(a, max_bits);
  if (s == 2) throw PrecisionExhausted("sign undecided at 2^-" + std::to_string(max_bits));
  return s;
}

namespace bounds {

namespace {

/// atanh(y) for y in [0, 1/3], bounds at working precision p.
std::pair<Rational, Rational> atanh_small(const Rational& y, unsigned p) {
  Rational y2_lo = dyadic_floor(y * y, p), y2_hi = dyadic_ceil(y * y, p);
  Rational pw_lo = dyadic_floor(y, p), pw_hi = dyadic_ceil(y, p);
  Rational s_lo = 0, s_hi = 0;
  // Outward rounding keeps each term >= 2^-p, so stop a few bits above that.
  Rational eps = width_for_bits(p - 6);
  for (unsigned i = 0;; ++i) {
    Rational denom = 2 * i + 1;
    s_lo += dyadic_floor(pw_lo / denom, p);
    s_hi += dyadic_ceil(pw_hi / denom, p);
    pw_lo = dyadic_floor(pw_lo * y2_lo, p);
    pw_hi = dyadic_ceil(pw_hi * y2_hi, p);
    // Tail bound: sum_{j>i} y^{2j+1}/(2j+1) <= y^{2i+3} / (1 - y^2) <= (9/8) y^{2i+3}.
    Rational tail = pw_hi * Rational(9, 8);
    if (tail <= eps || pw_hi == 0) {
      s_hi += dyadic_ceil(tail, p);
      break;
    }
  }
  return {s_lo, s_hi};
}

}  // namespace

std::pair<Rational, Rational> log(const Rational& x, unsigned bits) {
  if (x <= 0) throw DomainError("logarithm of a non-positive number");
  if (x == 1) return {0, 0};
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  Rational m = x / pow2(e);
  while (m < 1) {
    m *= 2;
    --e;
  }
  while (m >= 2) {
    m /= 2;
    ++e;
  }
  unsigned extra = static_cast<unsigned>(mpz_sizeinbase(Integer(e < 0 ? -e : e).get_mpz_t(), 2)) + 1;
  unsigned p = bits + extra + 8;
  Rational y = (m - 1) / (m + 1);
  auto [am_lo, am_hi] = atanh_small(y, p);
  Rational lo = 2 * am_lo, hi = 2 * am_hi;
  if (e != 0) {
    auto [l2_lo, l2_hi] = atanh_small(Rational(1, 3), p);
    l2_lo *= 2;
    l2_hi *= 2;
    if (e > 0) {
      lo += e * l2_lo;
      hi += e * l2_hi;
    } else {
      lo += e * l2_hi;
      hi += e * l2_lo;
    }
  }
  return {dyadic_floor(lo, bits + 2), dyadic_ceil(hi, bits + 2)};
}

std::pair<Rational, Rational> exp(const Rational& x, unsigned bits) {
  if (x == 0) return {1, 1};
  // Halve the argument until |t| <= 1/2, sum the Taylor series, then square.
  unsigned s = 0;
  Rational t = x;
  while (abs(t) > Rational(1, 2)) {
    t /= 2;
    ++s;
  }
  unsigned growth = x > 0 ? static_cast<unsigned>(floor(x * 3 / 2).get_ui()) + 1 : 0;
  unsigned p = bits + growth + s + 16;
  Rational eps = width_for_bits(p - 6);
  Rational term_lo = 1, term_hi = 1;
  Rational s_lo = 0, s_hi = 0;
  Rational at = abs(t);
  for (unsigned i = 1;; ++i) {
    s_lo += term_lo;
    s_hi += term_hi;
    Rational a = t / i;
    Rational n_lo = term_lo * a, n_hi = term_hi * a;
    if (n_lo > n_hi) std::swap(n_lo, n_hi);
    term_lo = dyadic_floor(n_lo, p);
    term_hi = dyadic_ceil(n_hi, p);
    // Remainder after i terms: |t|^i / i! * 2 for |t| <= 1/2.
    Rational mag_term = std::max(abs(term_lo), abs(term_hi));
    if (mag_term * 2 <= eps) {
      s_lo -= 2 * mag_term;
      s_hi += 2 * mag_term;
      break;
    }
  }
  s_lo = dyadic_floor(s_lo, p);
  s_hi = dyadic_ceil(s_hi, p);
  for (unsigned i = 0; i < s; ++i) {
    s_lo = dyadic_floor(s_lo * s_lo, p);
    s_hi = dyadic_ceil(s_hi * s_hi, p);
  }
  return {dyadic_floor(s_lo, bits + 2), dyadic_ceil(s_hi, bits + 2)};
}

std::pair<Rational, Rational> sqrt(const Rational& x, unsigned bits) {
  if (x < 0) throw DomainError("square root of a negative number");
  Integer scale = Integer(1) << (2 * bits);
  Integer n = floor(x * scale);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  Integer den = Integer(1) << bits;
  Rational lo = make_rational(r, den);
  if (lo * lo == x) return {lo, lo};
  return {lo, make_rational(r + 1, den)};
}

}  // namespace bounds

Enclosure log(const Enclosure& x) {
  Enclosure e = separate_from_zero(x);
  if (e.hi() < 0) throw DomainError("logarithm of a negative number");
  if (e.is_point() && e.lo() == 1) return Enclosure(0);
  unsigned m = bits_for(e.lo()) + 2;
  return Enclosure::from_approximator([e, m](unsigned k) {
    Enclosure v = e.to_bits(k + m);
    return std::pair<Rational, Rational>{bounds::log(v.lo(), k + 1).first, bounds::log(v.hi(), k + 1).second};
  });
}

Enclosure exp(const Enclosure& x) {
  if (x.is_point() && x.lo() == 0) return Enclosure(1);
  unsigned m = x.hi() > 0 ? static_cast<unsigned>(floor(x.hi() * 3 / 2).get_ui()) + 4 : 2;
  return Enclosure::from_approximator([x, m](unsigned k) {
    Enclosure v = x.to_bits(k + m);
    return std::pair<Rational, Rational>{bounds::exp(v.lo(), k + 1).first, bounds::exp(v.hi(), k + 1).second};
  });
}

Enclosure sqrt(const Enclosure& x) {
  if (x.hi() < 0) throw DomainError("square root of a negative number");
  if (x.is_point()) {
    auto [lo, hi] = bounds::sqrt(x.lo(), 64);
    if (lo == hi) return Enclosure(lo);
  }
  return Enclosure::from_approximator([x](unsigned k) {
    // sqrt is 1/2-Holder near zero, so the argument needs twice the bits.
    Enclosure v = x.to_bits(2 * k + 4);
    Rational lo = v.lo() > 0 ? bounds::sqrt(v.lo(), k + 1).first : Rational(0);
    return std::pair<Rational, Rational>{lo, bounds::sqrt(std::max(v.hi(), Rational(0)), k + 1).second};
  });
}

std::string to_decimal(const Enclosure& e, int digits) {
  Enclosure r = e.is_point() ? e : e.to_bits(static_cast<unsigned>(digits * 4 + 16));
  return to_decimal(r.midpoint(), digits);
}

}  // namespace crossratio
