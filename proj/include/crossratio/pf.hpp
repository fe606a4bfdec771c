#pragma once

#include <optional>

#include "crossratio/enclosure.hpp"
#include "crossratio/matrix.hpp"
#include "crossratio/quadext.hpp"
#include "crossratio/real.hpp"

namespace crossratio {

/// Exact eigen-data of a 2x2 rational matrix with distinct real eigenvalues
/// of distinct modulus, all living in one quadratic field.
struct QuadEigen {
  QuadExt eigenvalue;   // dominant eigenvalue, signed
  QuadExt lambda;       // |eigenvalue|
  QuadExt second;       // the other eigenvalue
  Vec<QuadExt> right;   // M·right = eigenvalue·right, largest |entry| = 1
  Vec<QuadExt> left;    // leftᵀ·M = eigenvalue·leftᵀ, largest |entry| = 1
  QuadExt gap;          // |second| / lambda
};

/// Leading eigen-data of a primitive (or 2x2 hyperbolic) matrix.
struct PFData {
  Enclosure lambda;
  Vec<Enclosure> right;
  Vec<Enclosure> left;
  /// |λ₂| / λ, certified < 1.
  Enclosure gap;
  std::optional<QuadEigen> exact;

  Real lambda_real() const { return exact ? Real(exact->lambda) : Real(lambda); }
};

/// Least k <= (n-1)^2 + 1 with M^k entrywise positive, or nullopt.
/// Throws DomainError on a negative entry.
std::optional<unsigned> primitivity(const Matrix<Rational>& m);

/// Exact path for 2x2 matrices. Throws HypothesisViolation when the
/// eigenvalues are not real with distinct moduli.
QuadEigen quad_eigen(const Matrix<Rational>& m);

/// Dimension 2 uses quad_eigen; larger matrices must be primitive and go
/// through char_poly, root isolation and cofactor eigenvectors.
PFData pf_data(const Matrix<Rational>& m);

/// Coefficient c with λ⁻ⁿMⁿu → c·reference, where reference defaults to
/// the normalized right eigenvector. Exact whenever the data is.
Real projection_coeff(const PFData& pf, const Vec<QuadExt>& u, const std::optional<Vec<QuadExt>>& reference = {});
QuadExt projection_coeff(const QuadEigen& eig, const Vec<QuadExt>& u,
                         const std::optional<Vec<QuadExt>>& reference = {});

/// Certifies M·right - λ·right and leftᵀM - λ·leftᵀ enclose zero, entrywise,
/// at working precision 2^-bits.
bool residual_certified(const Matrix<Rational>& m, const PFData& pf, unsigned bits = 64);

namespace detail {
/// Certified enclosure of the largest modulus among roots of the monic
/// squarefree polynomial p other than the real root enclosed by `leading`.
Enclosure second_modulus(const RationalPolynomial& p, const Enclosure& leading);
}  // namespace detail

}  // namespace crossratio
