#pragma once

#include <optional>

#include "crossratio/matrix.hpp"
#include "crossratio/real.hpp"
#include "crossratio/word.hpp"

namespace crossratio {

/// A filling pair of multicurves A = a₁…a_p and B = b₁…b_q recorded by the
/// p×q matrix N of intersection numbers i(a_j, b_k).
struct CurveSystem {
  Matrix<Rational> intersections;
  Real mu;  // leading eigenvalue of N·Nᵀ

  std::size_t p() const { return intersections.rows(); }
  std::size_t q() const { return intersections.cols(); }
};

/// Validates N (nonnegative integers, no zero row or column) and computes mu.
CurveSystem make_curve_system(const Matrix<Rational>& n);

/// T_A ↦ [[1, s], [0, 1]], T_B ↦ [[1, 0], [−s, 1]] with s = √mu.
struct TVRep {
  Real sqrt_mu;
  /// Present when √mu lies in a quadratic field.
  std::optional<Matrix<QuadExt>> ta;
  std::optional<Matrix<QuadExt>> tb;
};

TVRep build_rep(const CurveSystem& cs);

/// √x inside Q(√d) when x = a + b√d has such a root.
std::optional<QuadExt> quadratic_sqrt(const QuadExt& x);

/// Trace of the image of a word in A, B as a polynomial in mu. The trace is
/// even in s, so only powers of s² = mu appear.
RationalPolynomial tv_trace_polynomial(const Word& word);

/// Stretch factor of the class of a word with A-exponents ≥ 0, B-exponents
/// ≤ 0 and both letters present; HypothesisViolation otherwise.
Real tv_stretch(const CurveSystem& cs, const Word& word);

}  // namespace crossratio
