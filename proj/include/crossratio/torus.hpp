#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "crossratio/matrix.hpp"
#include "crossratio/pf.hpp"
#include "crossratio/real.hpp"
#include "crossratio/word.hpp"

namespace crossratio {

inline constexpr std::string_view kTorusChart = "torus";

/// A measured foliation as a weight vector in a named chart. In the torus
/// chart, points are nonzero vectors up to sign and positive scaling.
struct ChartPoint {
  std::string chart{kTorusChart};
  Vec<QuadExt> weights;

  ChartPoint() = default;
  ChartPoint(Vec<QuadExt> w, std::string chart_id = std::string(kTorusChart));
  ChartPoint scaled(const QuadExt& s) const;
};

/// i(u, v) = |u₁v₂ − u₂v₁|. Exact when both points share a quadratic field.
Real intersection(const ChartPoint& u, const ChartPoint& v);

/// Equality of projective classes (up to any nonzero scalar), exact.
bool projectively_equal(const ChartPoint& u, const ChartPoint& v);

/// The twist generators R = [[1,1],[0,1]] and L = [[1,0],[1,1]].
const std::map<std::string, Matrix<Rational>>& torus_generators();

enum class Classification { PseudoAnosov, NotPseudoAnosov };
std::string_view to_string(Classification c);

/// Requires an integer matrix of determinant 1.
Classification classify(const Matrix<Rational>& m);

/// A mapping class of the once-punctured torus. Copies share one lazily
/// computed PFData.
class PAClass {
 public:
  PAClass(Word word, Matrix<Rational> matrix);
  static PAClass from_word(std::string_view text);
  static PAClass from_matrix(const Matrix<Rational>& m);

  const Word& word() const { return word_; }
  const Matrix<Rational>& matrix() const { return matrix_; }
  Classification classification() const { return classify(matrix_); }
  bool is_pseudo_anosov() const { return classification() == Classification::PseudoAnosov; }
  /// Throws HypothesisViolation when not pseudo-Anosov.
  const PFData& pf() const;

  PAClass inverse() const;
  PAClass power(int k) const;
  friend PAClass operator*(const PAClass& a, const PAClass& b);

 private:
  struct Cache;
  Word word_;
  Matrix<Rational> matrix_;
  std::shared_ptr<Cache> cache_;
};

struct FixedFoliations {
  ChartPoint plus;   // unstable: M·plus = ±λ·plus
  ChartPoint minus;  // stable: M·minus = ±λ⁻¹·minus
  QuadExt lambda;    // > 1
};

/// Representatives (2b, d−a ± √Δ) with Δ = trace² − 4, or (a−d ± √Δ, 2c)
/// when b = 0.
FixedFoliations fixed_foliations(const PAClass& g);

/// λ_g = (|t| + √(t² − 4))/2 for a pseudo-Anosov of trace t.
QuadExt stretch_factor(const PAClass& g);

/// log λ_g, refinable.
Enclosure translation_length(const PAClass& g);

/// True iff the fixed sets {g^±} and {h^±} are disjoint.
bool are_independent(const PAClass& g, const PAClass& h);

}  // namespace crossratio
