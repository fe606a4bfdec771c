#include "crossratio/torus.hpp"

#include <mutex>

#include "crossratio/errors.hpp"

namespace crossratio {

ChartPoint::ChartPoint(Vec<QuadExt> w, std::string chart_id) : chart(std::move(chart_id)), weights(std::move(w)) {
  bool nonzero = false;
  for (const auto& x : weights) nonzero = nonzero || !(x == QuadExt(0));
  if (!nonzero) throw DegenerateInputError("chart point has all weights zero");
}

ChartPoint ChartPoint::scaled(const QuadExt& s) const {
  ChartPoint p = *this;
  for (auto& x : p.weights) x *= s;
  return p;
}

namespace {

void require_torus(const ChartPoint& u) {
  if (u.chart != kTorusChart) throw ValidationError("point in chart '" + u.chart + "' used where the torus chart is required");
  if (u.weights.size() != 2) throw ValidationError("torus chart points have two weights");
}

/// Slope u₂/u₁, or nullopt for the vertical class.
std::optional<QuadExt> slope(const ChartPoint& u) {
  if (u.weights[0] == QuadExt(0)) return std::nullopt;
  return u.weights[1] / u.weights[0];
}

bool is_integer_matrix(const Matrix<Rational>& m) {
  for (const auto& x : m.entries())
    if (x.get_den() != 1) return false;
  return true;
}

}  // namespace

Real intersection(const ChartPoint& u, const ChartPoint& v) {
  require_torus(u);
  require_torus(v);
  if (u.chart != v.chart) throw ValidationError("intersection across charts");
  Real det = Real(u.weights[0]) * Real(v.weights[1]) - Real(u.weights[1]) * Real(v.weights[0]);
  return abs(det);
}

bool projectively_equal(const ChartPoint& u, const ChartPoint& v) {
  if (u.chart != v.chart) return false;
  require_torus(u);
  require_torus(v);
  auto su = slope(u), sv = slope(v);
  if (!su || !sv) return !su && !sv;
  return *su == *sv;
}

const std::map<std::string, Matrix<Rational>>& torus_generators() {
  static const std::map<std::string, Matrix<Rational>> gens = {{"R", Matrix<Rational>{{1, 1}, {0, 1}}},
                                                               {"L", Matrix<Rational>{{1, 0}, {1, 1}}}};
  return gens;
}

std::string_view to_string(Classification c) {
  return c == Classification::PseudoAnosov ? "pseudoAnosov" : "notPseudoAnosov";
}

Classification classify(const Matrix<Rational>& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ValidationError("torus mapping classes are 2x2 matrices");
  if (!is_integer_matrix(m)) throw ValidationError("torus mapping class matrix must have integer entries");
  if (determinant(m) != 1) throw DomainError("torus mapping class must have determinant 1");
  return abs(m.trace()) > 2 ? Classification::PseudoAnosov : Classification::NotPseudoAnosov;
}

struct PAClass::Cache {
  std::once_flag once;
  PFData pf;
};

PAClass::PAClass(Word word, Matrix<Rational> matrix)
    : word_(std::move(word)), matrix_(std::move(matrix)), cache_(std::make_shared<Cache>()) {
  classify(matrix_);
}

PAClass PAClass::from_word(std::string_view text) {
  Word w = parse_word(text);
  return PAClass(w, word_eval(w, torus_generators()));
}

PAClass PAClass::from_matrix(const Matrix<Rational>& m) { return PAClass({}, m); }

const PFData& PAClass::pf() const {
  if (!is_pseudo_anosov()) throw HypothesisViolation("mapping class " + to_string(word_) + " is not pseudo-Anosov");
  std::call_once(cache_->once, [this] { cache_->pf = pf_data(matrix_); });
  return cache_->pf;
}

PAClass PAClass::inverse() const { return PAClass(crossratio::inverse(word_), crossratio::inverse(matrix_)); }

PAClass PAClass::power(int k) const {
  if (k < 0) return inverse().power(-k);
  Word w;
  for (int i = 0; i < k; ++i) w.insert(w.end(), word_.begin(), word_.end());
  return PAClass(free_reduce(w), crossratio::power(matrix_, static_cast<unsigned>(k)));
}

PAClass operator*(const PAClass& a, const PAClass& b) {
  Word w = a.word_;
  w.insert(w.end(), b.word_.begin(), b.word_.end());
  return PAClass(free_reduce(w), a.matrix_ * b.matrix_);
}

FixedFoliations fixed_foliations(const PAClass& g) {
  if (!g.is_pseudo_anosov()) throw HypothesisViolation("fixed foliations need a pseudo-Anosov class");
  const auto& m = g.matrix();
  Rational a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  Rational t = a + d;
  QuadExt root = QuadExt::sqrt_of(t * t - 4);
  // The dominant eigenvalue is (t + sgn(t)√Δ)/2.
  QuadExt up = t > 0 ? root : -root;
  auto rep = [&](const QuadExt& r) {
    if (b != 0) return ChartPoint({QuadExt(2 * b), QuadExt(d - a) + r});
    return ChartPoint({QuadExt(a - d) + r, QuadExt(2 * c)});
  };
  return {rep(up), rep(-up), stretch_factor(g)};
}

QuadExt stretch_factor(const PAClass& g) {
  if (!g.is_pseudo_anosov()) throw HypothesisViolation("stretch factor needs a pseudo-Anosov class");
  Rational t = abs(g.matrix().trace());
  return (QuadExt(t) + QuadExt::sqrt_of(t * t - 4)) / QuadExt(2);
}

Enclosure translation_length(const PAClass& g) { return log(stretch_factor(g).to_enclosure()); }

bool are_independent(const PAClass& g, const PAClass& h) {
  auto fg = fixed_foliations(g), fh = fixed_foliations(h);
  for (const auto* x : {&fg.plus, &fg.minus})
    for (const auto* y : {&fh.plus, &fh.minus})
      if (projectively_equal(*x, *y)) return false;
  return true;
}

}  // namespace crossratio
