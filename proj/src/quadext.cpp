#include "crossratio/quadext.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include "crossratio/errors.hpp"

namespace crossratio {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Pollard-Brent rho; returns a nontrivial factor of composite odd n.
Integer rho_factor(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    unsigned long r = 1;
    constexpr unsigned long m = 64;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    std::map<Integer, unsigned> sub;
    factor_into(r, sub);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  Integer f = rho_factor(n);
  factor_into(f, out);
  factor_into(Integer(n / f), out);
}

}  // namespace

SquarefreeSplit squarefree_split(const Integer& n) {
  if (n <= 0) throw DomainError("squarefree split of a non-positive integer");
  Integer rest = n;
  Integer k = 1, d = 1;
  for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) d *= p;
  }
  std::map<Integer, unsigned> factors;
  factor_into(rest, factors);
  for (const auto& [p, e] : factors) {
    for (unsigned i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) d *= p;
  }
  return {k, d};
}

bool is_squarefree(const Integer& n) { return n > 0 && squarefree_split(n).square_root == 1; }

QuadExt::QuadExt(const Rational& a) : a_(a) { a_.canonicalize(); }

QuadExt::QuadExt(const Rational& a, const Rational& b, const Integer& d) : a_(a), b_(b), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (b_ == 0) {
    d_ = 1;
    return;
  }
  if (d_ < 2 || !is_squarefree(d_)) {
    throw DomainError("QuadExt discriminant must be a squarefree integer >= 2, got " + d_.get_str());
  }
}

QuadExt QuadExt::sqrt_of(const Rational& q) {
  if (q < 0) throw DomainError("square root of a negative rational");
  if (q == 0) return QuadExt(0);
  // sqrt(p/r) = sqrt(p r) / r
  Integer pr = q.get_num() * q.get_den();
  auto [k, d] = squarefree_split(pr);
  Rational coeff = make_rational(k, q.get_den());
  if (d == 1) return QuadExt(coeff);
  QuadExt r;
  r.b_ = coeff;
  r.d_ = d;
  return r;
}

namespace {

const Integer& common_d(const QuadExt& x, const QuadExt& y) {
  if (x.is_rational()) return y.d();
  if (y.is_rational() || x.d() == y.d()) return x.d();
  throw FieldMismatchError("quadratic fields differ: sqrt(" + x.d().get_str() + ") vs sqrt(" + y.d().get_str() + ")");
}

}  // namespace

QuadExt QuadExt::conjugate() const {
  QuadExt r = *this;
  r.b_ = -b_;
  return r;
}

Rational QuadExt::norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

int QuadExt::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with d b^2.
  Rational diff = norm();
  return sgn(diff) > 0 ? sa : sb;
}

QuadExt& QuadExt::operator+=(const QuadExt& y) {
  Integer d = common_d(*this, y);
  a_ += y.a_;
  b_ += y.b_;
  d_ = b_ == 0 ? Integer(1) : d;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& y) { return *this += -y; }

QuadExt& QuadExt::operator*=(const QuadExt& y) {
  Integer d = common_d(*this, y);
  Rational a = a_ * y.a_ + Rational(d) * b_ * y.b_;
  Rational b = a_ * y.b_ + b_ * y.a_;
  a_ = a;
  b_ = b;
  d_ = b_ == 0 ? Integer(1) : d;
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& y) {
  Rational n = y.norm();
  if (n == 0) throw DomainError("QuadExt division by zero");
  common_d(*this, y);
  *this *= y.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

QuadExt QuadExt::operator-() const {
  QuadExt r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
}

Enclosure QuadExt::to_enclosure() const {
  if (b_ == 0) return Enclosure(a_);
  QuadExt self = *this;
  unsigned m = magnitude_bits(b_) + 2;
  return Enclosure::from_approximator([self, m](unsigned k) {
    auto [s_lo, s_hi] = bounds::sqrt(Rational(self.d_), k + m);
    Rational x = self.a_ + self.b_ * s_lo, y = self.a_ + self.b_ * s_hi;
    if (x > y) std::swap(x, y);
    return std::pair<Rational, Rational>{x, y};
  });
}

double QuadExt::to_double() const { return to_enclosure().to_bits(60).midpoint().get_d(); }

std::string QuadExt::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

QuadExt abs(const QuadExt& x) { return x.sign() < 0 ? -x : x; }

QuadExt pow(const QuadExt& x, int n) {
  if (n < 0) return QuadExt(1) / pow(x, -n);
  auto k = static_cast<unsigned>(n);
  QuadExt r(1), base = x;
  while (k > 0) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
  if (x.is_rational()) return os << x.a();
  if (x.a() != 0) os << x.a() << (x.b() > 0 ? " + " : " - ");
  else if (x.b() < 0) os << "-";
  Rational b = x.b() < 0 ? Rational(-x.b()) : x.b();
  if (b != 1) os << b << "*";
  return os << "sqrt(" << x.d() << ")";
}

}  // namespace crossratio
