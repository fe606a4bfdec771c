#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "crossratio/matrix.hpp"
#include "crossratio/pf.hpp"
#include "crossratio/real.hpp"
#include "crossratio/torus.hpp"
#include "crossratio/word.hpp"

namespace crossratio {

/// A linear chart V = Q^dim with the positive cone and named generator
/// actions. A generator is flagged cone-preserving when it maps every
/// positive vector to a positive vector.
class ChartSystem {
 public:
  ChartSystem(std::string name, std::map<std::string, Matrix<Rational>> generators);
  static ChartSystem torus();

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::map<std::string, Matrix<Rational>>& generators() const { return gens_; }
  bool cone_preserving(const std::string& generator) const;

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::map<std::string, Matrix<Rational>> gens_;
  std::map<std::string, bool> flags_;
};

/// Nonnegative entries with no zero row: the image of the open positive
/// cone stays in it. Exact, no sampling needed.
bool maps_cone_into_cone(const Matrix<Rational>& m);

struct CarriedAction {
  Matrix<Rational> matrix;
  bool cone_preserving;
};

/// Product of generator actions. The flag is the conjunction over letters,
/// where an inverse letter is flagged only if its inverse matrix is itself
/// cone-preserving.
CarriedAction carried_action(const ChartSystem& cs, const Word& word);

/// u ↦ i(u, g⁻) up to an unknown positive factor, realized by the left PF
/// eigenvector of g's chart action. Only scale-free quantities are exposed.
class IntersectionFunctional {
 public:
  explicit IntersectionFunctional(const PFData& pf);

  std::size_t dim() const { return coeffs_.size(); }
  /// Normalized so the largest coefficient is 1.
  const Vec<Enclosure>& coefficients() const { return coeffs_; }
  const std::optional<LinearForm<QuadExt>>& exact_form() const { return exact_; }

  /// |w(u)| / |w(v)|: independent of the unknown normalization.
  Real ratio(const Vec<QuadExt>& u, const Vec<QuadExt>& v) const;

 private:
  Real pairing(const Vec<QuadExt>& u) const;
  Vec<Enclosure> coeffs_;
  std::optional<LinearForm<QuadExt>> exact_;
};

IntersectionFunctional intersection_functional(const ChartSystem& cs, const Word& g);

/// A piece W_j = {u : ℓ(u) ≥ 0 for every ℓ in region} carrying the linear
/// form L_j.
struct PLPiece {
  std::vector<LinearForm<QuadExt>> region;
  LinearForm<QuadExt> form;
  bool contains(const Vec<QuadExt>& u) const;
};

struct PLForm {
  std::size_t dim = 0;
  std::vector<PLPiece> pieces;
};

/// f_τ(u) = i(z, u) = |det(z, u)| on the torus chart: L₁ = det(z, ·) on
/// det(z, ·) ≥ 0 and L₂ = −det(z, ·) on the other half-plane.
PLForm torus_intersection_form(const Vec<QuadExt>& z);

/// max_j L_j with W_j = {L_j ≥ L_k for all k}.
PLForm max_of_linear(const std::vector<LinearForm<QuadExt>>& forms);
/// min_j L_j, the concave counterpart (used as a non-convex fixture).
PLForm min_of_linear(const std::vector<LinearForm<QuadExt>>& forms);

struct PLValue {
  QuadExt value;
  std::size_t piece;  // 1-based index of the lowest-index piece containing u
};

PLValue pl_eval(const PLForm& f, const Vec<QuadExt>& u);

/// f(tu + (1−t)w) ≤ t f(u) + (1−t) f(w), exact.
bool convexity_probe(const PLForm& f, const Vec<QuadExt>& u, const Vec<QuadExt>& w, const Rational& t);

/// Adjacent pieces agree at every sample lying in two or more pieces.
bool pl_continuous_at(const PLForm& f, const Vec<QuadExt>& u);

/// Convexity checked on deterministic random pairs and t ∈ {1/4, 1/2, 3/4}.
/// Returns the first violating pair, if any.
struct ConvexityWitness {
  Vec<QuadExt> u, w;
  Rational t;
};
std::optional<ConvexityWitness> convexity_scan(const PLForm& f, const Vec<QuadExt>& center, std::uint64_t seed,
                                               int samples = 64);

/// The compact sample set Q and the n-range of a uniform-convergence check.
struct ConvergenceSpec {
  unsigned n_min = 1;
  unsigned n_max = 10;
  Rational tolerance{1, 1000000};
  std::vector<Vec<QuadExt>> samples;

  void validate() const;
};

}  // namespace crossratio
