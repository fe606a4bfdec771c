#pragma once

#include <optional>
#include <vector>

#include "crossratio/chartmodel.hpp"
#include "crossratio/tensor.hpp"
#include "crossratio/torus.hpp"

namespace crossratio {

/// [x, y, z, w] = i(x,w) i(y,z) / (i(x,z) i(y,w)).
struct CrossRatioValue {
  Real value;
  ChartPoint x, y, z, w;
};

CrossRatioValue cross_ratio(const ChartPoint& x, const ChartPoint& y, const ChartPoint& z, const ChartPoint& w);

/// [g⁺, h⁺, g⁻, h⁻] from left PF functionals w_g, w_h alone:
/// w_h(g⁺) w_g(h⁺) / (w_g(g⁺) w_h(h⁺)).
CrossRatioValue cross_ratio_functional(const PAClass& g, const PAClass& h);

struct Prop24Row {
  unsigned n = 0;
  bool pseudo_anosov = false;
  Integer trace;
  std::optional<QuadExt> lambda;  // λ of gⁿhⁿ
  Enclosure ratio;                // λ_{gⁿhⁿ} / (λ_g λ_h)ⁿ
  Enclosure deviation;            // |ratio − CR|
};

struct Prop24Table {
  Real cross_ratio;
  std::vector<Prop24Row> rows;
};

/// Rows n = 1..n_max, computed in parallel. Throws DependenceError when g
/// and h share a fixed point.
Prop24Table prop24_table(const PAClass& g, const PAClass& h, unsigned n_max);
/// Single-threaded reference for the same table.
Prop24Table prop24_table_serial(const PAClass& g, const PAClass& h, unsigned n_max);

struct Lemma23Row {
  unsigned n = 0;
  std::size_t sample = 0;
  Vec<QuadExt> iterate;  // λ⁻ⁿ Mⁿ u
  QuadExt deviation;     // ‖iterate − coeff·g⁺‖∞
  QuadExt bound;         // K·gapⁿ with K fitted at n_min
  bool within_bound = false;
};

struct Lemma23Table {
  ChartPoint gplus;
  std::vector<QuadExt> coefficients;  // i(u, g⁻)/i(g⁺, g⁻) per sample
  QuadExt gap;
  std::vector<Lemma23Row> rows;
};

Lemma23Table lemma23_table(const PAClass& g, const ConvergenceSpec& spec);

/// C = i(g⁺, z) i(z, g⁻) / i(g⁺, g⁻).
QuadExt c_constant(const PAClass& g, const ChartPoint& z);

struct ForlargeRow {
  unsigned n = 0;
  QuadExt intersection;  // i(z, g⁻²ⁿ z)
  QuadExt ratio;         // λ⁻²ⁿ · intersection
  QuadExt deviation;     // |ratio − C|
  bool equals_c = false;
};

struct ForlargeTable {
  QuadExt c;
  QuadExt alpha;
  std::vector<ForlargeRow> rows;
  bool strictly_increasing = false;
  bool any_equal = false;
};

ForlargeTable forlarge_table(const PAClass& g, const ChartPoint& z, unsigned n_max);
ForlargeTable forlarge_table_serial(const PAClass& g, const ChartPoint& z, unsigned n_max);

struct IcebergRow {
  std::size_t piece = 0;  // 1-based
  QuadExt value;          // L_j(v)
  bool nonpositive = false;
};

/// Per-piece values at v of a convex PL form with f(v) = 0. The convexity
/// guard samples around v; a violation raises HypothesisViolation.
std::vector<IcebergRow> iceberg_check(const PLForm& f, const Vec<QuadExt>& v, std::uint64_t seed = 0x1ceb);

struct IcebergFixture {
  PLForm form;
  Vec<QuadExt> v;
};

/// Random convex max-of-linear forms in dimensions 2..4, each shifted along
/// a fixed form so that f(v) = 0.
std::vector<IcebergFixture> convex_iceberg_fixtures(std::size_t count, std::uint64_t seed);
/// −|u₁ − u₂| at v = (1, 1): concave, so the convexity guard fires.
IcebergFixture nonconvex_iceberg_fixture();

/// P_n = ∏_j (L_j(Aⁿ v) − C αⁿ) with its tensor-product recurrence.
struct PnSequence {
  std::size_t pieces = 0;
  QuadExt c;
  QuadExt alpha;
  TensorSystem<QuadExt> system;
  std::vector<QuadExt> values;      // P_0 .. P_{n_max + d}
  std::vector<QuadExt> normalized;  // P_n / α^{m n}
  std::vector<QuadExt> residuals;   // Σ c_i P_{n+i}, n = 0 .. n_max
  bool any_zero = false;
  unsigned n_max = 0;

  std::size_t degree() const { return system.dim(); }
  /// P_{−1}, …, P_{−count} from the recurrence run backwards (needs c_0 ≠ 0).
  std::vector<QuadExt> extend_backward(std::size_t count) const;
};

PnSequence pn_sequence(const Matrix<QuadExt>& a, const std::vector<LinearForm<QuadExt>>& pieces,
                       const Vec<QuadExt>& v, const QuadExt& c, const QuadExt& alpha, unsigned n_max);

/// The torus instance: A = g⁻², α = λ_g², pieces of i(z, ·), v = z.
PnSequence pn_sequence(const PAClass& g, const ChartPoint& z, unsigned n_max);

/// A = diag(4, 1/4), v = (1, 0), L₁ = (3, 0), C = 3, α = 4: the single
/// piece satisfies L₁(Aⁿv) = Cαⁿ, so every P_n vanishes.
PnSequence arithmetic_pn_fixture(unsigned n_max);

/// Distances of log(value) to the lattice c·ℤ, each an enclosure of width
/// at most eps.
std::vector<Enclosure> arithmetic_residue(const std::vector<Real>& values, const Real& c,
                                          const Rational& eps = default_precision());

}  // namespace crossratio
