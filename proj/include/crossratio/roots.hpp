#pragma once

#include <vector>

#include "crossratio/enclosure.hpp"
#include "crossratio/polynomial.hpp"

namespace crossratio {

/// p / gcd(p, p'), monic.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

/// Number of sign changes in the nonzero coefficient sequence.
unsigned sign_variations(const RationalPolynomial& p);

/// Isolates the distinct real roots of p by Descartes-rule bisection with
/// exact sign evaluation. Enclosures come back sorted and pairwise disjoint,
/// each refinable by bisection on the squarefree part of p.
/// Throws DomainError for the zero polynomial.
std::vector<Enclosure> isolate_real_roots(const RationalPolynomial& p);

/// Cauchy bound: every complex root has modulus < the returned value.
Rational root_bound(const RationalPolynomial& p);

}  // namespace crossratio
