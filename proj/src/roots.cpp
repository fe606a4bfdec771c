#include "crossratio/roots.hpp"

#include <algorithm>
#include <memory>

namespace crossratio {

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (p.degree() == 0) return RationalPolynomial{Rational(1)};
  auto g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

unsigned sign_variations(const RationalPolynomial& p) {
  unsigned v = 0;
  int last = 0;
  for (const auto& c : p.coeffs()) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

Rational root_bound(const RationalPolynomial& p) {
  Rational m = 0;
  for (long i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(static_cast<std::size_t>(i)) / p.leading())));
  return m + 1;
}

namespace {

/// Coefficients of (1+x)^n p((a + b x)/(1 + x)); its sign variations bound the
/// number of roots of p in the open interval (a, b).
RationalPolynomial descartes_transform(const RationalPolynomial& p, const Rational& a, const Rational& b) {
  auto n = static_cast<std::size_t>(p.degree());
  RationalPolynomial lin{a, b};
  RationalPolynomial one_plus_x{Rational(1), Rational(1)};
  std::vector<RationalPolynomial> lin_pow{RationalPolynomial{Rational(1)}}, opx_pow{RationalPolynomial{Rational(1)}};
  for (std::size_t i = 1; i <= n; ++i) {
    lin_pow.push_back(lin_pow.back() * lin);
    opx_pow.push_back(opx_pow.back() * one_plus_x);
  }
  RationalPolynomial acc;
  for (std::size_t i = 0; i <= n; ++i) {
    if (p.coeff(i) == 0) continue;
    acc = acc + p.coeff(i) * (lin_pow[i] * opx_pow[n - i]);
  }
  return acc;
}

struct Bracket {
  Rational lo, hi;
  bool exact;
};

void isolate(const RationalPolynomial& p, const Rational& a, const Rational& b, std::vector<Bracket>& out) {
  unsigned v = sign_variations(descartes_transform(p, a, b));
  if (v == 0) return;
  if (v == 1) {
    out.push_back({a, b, false});
    return;
  }
  Rational m = (a + b) / 2;
  isolate(p, a, m, out);
  if (p(m) == 0) out.push_back({m, m, true});
  isolate(p, m, b, out);
}

}  // namespace

std::vector<Enclosure> isolate_real_roots(const RationalPolynomial& p) {
  if (p.is_zero()) throw DomainError("root isolation of the zero polynomial");
  auto sq = std::make_shared<const RationalPolynomial>(squarefree_part(p));
  if (sq->degree() <= 0) return {};
  Rational bound = root_bound(*sq);
  std::vector<Bracket> brackets;
  isolate(*sq, -bound, bound, brackets);

  auto sign_at = [sq](const Rational& x) { return sgn((*sq)(x)); };
  std::vector<Enclosure> roots;
  roots.reserve(brackets.size());
  for (auto br : brackets) {
    if (br.exact) {
      roots.emplace_back(br.lo);
      continue;
    }
    // An endpoint may be a neighbouring exact root; move it inward, keeping
    // the half that still holds one root of the open interval.
    while (!br.exact && ((*sq)(br.lo) == 0 || (*sq)(br.hi) == 0)) {
      Rational m = (br.lo + br.hi) / 2;
      if ((*sq)(m) == 0) {
        br = {m, m, true};
      } else if (sign_variations(descartes_transform(*sq, br.lo, m)) == 1) {
        br.hi = m;
      } else {
        br.lo = m;
      }
    }
    roots.push_back(br.exact ? Enclosure(br.lo) : Enclosure::from_bisection(sign_at, br.lo, br.hi));
  }
  // Neighbouring brackets can share an endpoint (never a root); shrink until
  // the closed enclosures are disjoint.
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    while (roots[i].hi() >= roots[i + 1].lo()) {
      if (!roots[i].is_point()) roots[i] = roots[i].halved();
      if (roots[i].hi() >= roots[i + 1].lo() && !roots[i + 1].is_point()) roots[i + 1] = roots[i + 1].halved();
    }
  }
  return roots;
}

}  // namespace crossratio
