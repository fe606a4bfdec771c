#include "crossratio/verify.hpp"

#include <random>

#include "crossratio/errors.hpp"

namespace crossratio {

namespace {

QuadExt require_exact(const Real& r, const char* what) {
  if (const QuadExt* q = r.exact()) return *q;
  throw FieldMismatchError(std::string(what) + " does not lie in a single quadratic field");
}

QuadExt det2(const Vec<QuadExt>& u, const Vec<QuadExt>& v) { return u[0] * v[1] - u[1] * v[0]; }

Matrix<QuadExt> to_quad(const Matrix<Rational>& m) {
  Matrix<QuadExt> q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = QuadExt(m(i, j));
  return q;
}

QuadExt max_abs(const Vec<QuadExt>& v) {
  QuadExt m(0);
  for (const auto& x : v)
    if (m < abs(x)) m = abs(x);
  return m;
}

void require_independent(const PAClass& g, const PAClass& h) {
  if (!are_independent(g, h)) {
    throw DependenceError("mapping classes " + to_string(g.word()) + " and " + to_string(h.word()) +
                          " share a fixed foliation");
  }
}

Prop24Row prop24_row(const PAClass& g, const PAClass& h, const QuadExt& base, const Real& cr, unsigned n) {
  Prop24Row row;
  row.n = n;
  Matrix<Rational> m = power(g.matrix(), n) * power(h.matrix(), n);
  row.trace = m.trace().get_num();
  row.pseudo_anosov = classify(m) == Classification::PseudoAnosov;
  if (!row.pseudo_anosov) return row;
  row.lambda = stretch_factor(PAClass::from_matrix(m));
  row.ratio = row.lambda->to_enclosure() / pow(base, static_cast<int>(n)).to_enclosure();
  row.deviation = abs(row.ratio - cr.enclosure());
  return row;
}

ForlargeRow forlarge_row(unsigned n, const Vec<QuadExt>& z, const Vec<QuadExt>& image, const QuadExt& alpha,
                         const QuadExt& c) {
  ForlargeRow row;
  row.n = n;
  row.intersection = abs(det2(z, image));
  row.ratio = row.intersection / pow(alpha, static_cast<int>(n));
  row.deviation = abs(row.ratio - c);
  row.equals_c = row.ratio == c;
  return row;
}

void finish_forlarge(ForlargeTable& t) {
  t.strictly_increasing = true;
  t.any_equal = false;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    t.any_equal = t.any_equal || t.rows[i].equals_c;
    if (i > 0 && !(t.rows[i - 1].ratio < t.rows[i].ratio)) t.strictly_increasing = false;
  }
}

}  // namespace

CrossRatioValue cross_ratio(const ChartPoint& x, const ChartPoint& y, const ChartPoint& z, const ChartPoint& w) {
  Real den = intersection(x, z) * intersection(y, w);
  if (sign(den) == 0) throw UndefinedCrossRatio("cross-ratio undefined: i(x,z)·i(y,w) = 0");
  return {intersection(x, w) * intersection(y, z) / den, x, y, z, w};
}

CrossRatioValue cross_ratio_functional(const PAClass& g, const PAClass& h) {
  require_independent(g, h);
  IntersectionFunctional wg(g.pf()), wh(h.pf());
  const Vec<QuadExt>& gp = g.pf().exact->right;
  const Vec<QuadExt>& hp = h.pf().exact->right;
  Real value = wh.ratio(gp, hp) * wg.ratio(hp, gp);
  auto fg = fixed_foliations(g), fh = fixed_foliations(h);
  return {value, ChartPoint(gp), ChartPoint(hp), fg.minus, fh.minus};
}

Prop24Table prop24_table(const PAClass& g, const PAClass& h, unsigned n_max) {
  require_independent(g, h);
  auto fg = fixed_foliations(g), fh = fixed_foliations(h);
  Prop24Table t{cross_ratio(fg.plus, fh.plus, fg.minus, fh.minus).value, std::vector<Prop24Row>(n_max)};
  g.pf();
  h.pf();
  QuadExt base = fg.lambda * fh.lambda;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (unsigned n = 1; n <= n_max; ++n) {
    try {
      t.rows[n - 1] = prop24_row(g, h, base, t.cross_ratio, n);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return t;
}

Prop24Table prop24_table_serial(const PAClass& g, const PAClass& h, unsigned n_max) {
  require_independent(g, h);
  auto fg = fixed_foliations(g), fh = fixed_foliations(h);
  Prop24Table t{cross_ratio(fg.plus, fh.plus, fg.minus, fh.minus).value, {}};
  QuadExt base = fg.lambda * fh.lambda;
  for (unsigned n = 1; n <= n_max; ++n) t.rows.push_back(prop24_row(g, h, base, t.cross_ratio, n));
  return t;
}

Lemma23Table lemma23_table(const PAClass& g, const ConvergenceSpec& spec) {
  spec.validate();
  auto f = fixed_foliations(g);
  const QuadEigen& eig = *g.pf().exact;
  Matrix<QuadExt> m = to_quad(g.matrix());
  QuadExt lambda = f.lambda;
  QuadExt sgn = eig.eigenvalue.sign() < 0 ? QuadExt(-1) : QuadExt(1);
  Lemma23Table t{f.plus, {}, eig.gap, {}};
  QuadExt base = require_exact(intersection(f.plus, f.minus), "i(g+, g-)");
  for (std::size_t s = 0; s < spec.samples.size(); ++s) {
    const Vec<QuadExt>& u = spec.samples[s];
    if (u.size() != 2) throw ValidationError("torus samples have two weights");
    t.coefficients.push_back(require_exact(intersection(ChartPoint(u), f.minus), "i(u, g-)") / base);
    QuadExt signed_coeff = projection_coeff(eig, u, f.plus.weights);
    Vec<QuadExt> x = u;
    std::optional<QuadExt> k;
    for (unsigned n = 1; n <= spec.n_max; ++n) {
      x = m * x;
      if (n < spec.n_min) continue;
      Lemma23Row row;
      row.n = n;
      row.sample = s;
      QuadExt scale = pow(lambda, -static_cast<int>(n));
      QuadExt limit = pow(sgn, static_cast<int>(n)) * signed_coeff;
      row.iterate = {x[0] * scale, x[1] * scale};
      row.deviation = max_abs({row.iterate[0] - limit * f.plus.weights[0], row.iterate[1] - limit * f.plus.weights[1]});
      QuadExt gn = pow(eig.gap, static_cast<int>(n));
      if (!k) k = row.deviation / gn;
      row.bound = *k * gn;
      row.within_bound = row.deviation <= row.bound;
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

QuadExt c_constant(const PAClass& g, const ChartPoint& z) {
  auto f = fixed_foliations(g);
  QuadExt a = require_exact(intersection(f.plus, z), "i(g+, z)");
  QuadExt b = require_exact(intersection(z, f.minus), "i(z, g-)");
  if (a == QuadExt(0) || b == QuadExt(0)) {
    throw DegenerateInputError("z is projectively a fixed foliation of g; C is undefined");
  }
  return a * b / require_exact(intersection(f.plus, f.minus), "i(g+, g-)");
}

ForlargeTable forlarge_table(const PAClass& g, const ChartPoint& z, unsigned n_max) {
  ForlargeTable t;
  t.c = c_constant(g, z);
  t.alpha = pow(stretch_factor(g), 2);
  Matrix<Rational> a = power(inverse(g.matrix()), 2);
  t.rows.resize(n_max);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (unsigned n = 1; n <= n_max; ++n) {
    try {
      Vec<QuadExt> image = to_quad(power(a, n)) * z.weights;
      t.rows[n - 1] = forlarge_row(n, z.weights, image, t.alpha, t.c);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  finish_forlarge(t);
  return t;
}

ForlargeTable forlarge_table_serial(const PAClass& g, const ChartPoint& z, unsigned n_max) {
  ForlargeTable t;
  t.c = c_constant(g, z);
  t.alpha = pow(stretch_factor(g), 2);
  Matrix<QuadExt> a = to_quad(power(inverse(g.matrix()), 2));
  Vec<QuadExt> x = z.weights;
  for (unsigned n = 1; n <= n_max; ++n) {
    x = a * x;
    t.rows.push_back(forlarge_row(n, z.weights, x, t.alpha, t.c));
  }
  finish_forlarge(t);
  return t;
}

std::vector<IcebergRow> iceberg_check(const PLForm& f, const Vec<QuadExt>& v, std::uint64_t seed) {
  if (!(pl_eval(f, v).value == QuadExt(0))) throw DomainError("iceberg check needs f(v) = 0");
  if (auto bad = convexity_scan(f, v, seed)) {
    throw HypothesisViolation("piecewise-linear form is not convex: the convexity inequality fails at t = " +
                              to_string(bad->t));
  }
  std::vector<IcebergRow> rows;
  for (std::size_t j = 0; j < f.pieces.size(); ++j) {
    QuadExt value = f.pieces[j].form(v);
    rows.push_back({j + 1, value, value <= QuadExt(0)});
  }
  return rows;
}

std::vector<IcebergFixture> convex_iceberg_fixtures(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-9, 9), dims(2, 4), pieces(2, 5);
  std::vector<IcebergFixture> out;
  while (out.size() < count) {
    auto dim = static_cast<std::size_t>(dims(rng));
    Vec<QuadExt> v(dim);
    for (auto& x : v) x = QuadExt(coef(rng));
    // e(v) = Σ v_i² > 0 unless v = 0.
    QuadExt ev(0);
    for (const auto& x : v) ev += x * x;
    if (ev == QuadExt(0)) continue;
    std::vector<LinearForm<QuadExt>> forms;
    QuadExt top;
    for (long j = 0, m = pieces(rng); j < m; ++j) {
      Vec<QuadExt> c(dim);
      for (auto& x : c) x = QuadExt(coef(rng));
      LinearForm<QuadExt> l(c);
      if (j == 0 || top < l(v)) top = l(v);
      forms.push_back(l);
    }
    Vec<QuadExt> shift(dim);
    for (std::size_t i = 0; i < dim; ++i) shift[i] = top / ev * v[i];
    for (auto& l : forms) l = l - LinearForm<QuadExt>(shift);
    out.push_back({max_of_linear(forms), v});
  }
  return out;
}

IcebergFixture nonconvex_iceberg_fixture() {
  // min(u₁ − u₂, u₂ − u₁) vanishes on the diagonal.
  LinearForm<QuadExt> a{QuadExt(1), QuadExt(-1)};
  return {min_of_linear({a, -a}), {QuadExt(1), QuadExt(1)}};
}

PnSequence arithmetic_pn_fixture(unsigned n_max) {
  Matrix<QuadExt> a{{QuadExt(4), QuadExt(0)}, {QuadExt(0), QuadExt(Rational(1, 4))}};
  return pn_sequence(a, {LinearForm<QuadExt>{QuadExt(3), QuadExt(0)}}, {QuadExt(1), QuadExt(0)}, QuadExt(3),
                     QuadExt(4), n_max);
}

PnSequence pn_sequence(const Matrix<QuadExt>& a, const std::vector<LinearForm<QuadExt>>& pieces,
                       const Vec<QuadExt>& v, const QuadExt& c, const QuadExt& alpha, unsigned n_max) {
  if (pieces.empty()) throw ValidationError("P_n needs at least one piece");
  std::size_t k = a.dim();
  if (v.size() != k) throw ValidationError("base vector dimension does not match the map");
  std::vector<Matrix<QuadExt>> maps;
  std::vector<LinearForm<QuadExt>> forms;
  std::vector<Vec<QuadExt>> vecs;
  Matrix<QuadExt> scalar{{alpha}};
  Vec<QuadExt> vhat = v;
  vhat.push_back(QuadExt(1));
  for (const auto& l : pieces) {
    if (l.dim() != k) throw ValidationError("piece form dimension does not match the map");
    Vec<QuadExt> coeffs = l.coeffs();
    coeffs.push_back(-c);
    maps.push_back(direct_sum(a, scalar));
    forms.emplace_back(std::move(coeffs));
    vecs.push_back(vhat);
  }
  PnSequence seq;
  seq.pieces = pieces.size();
  seq.c = c;
  seq.alpha = alpha;
  seq.n_max = n_max;
  seq.system = tensor(maps, forms, vecs);
  std::size_t d = seq.degree();
  QuadExt alpha_m = pow(alpha, static_cast<int>(pieces.size()));

  // Direct evaluation from the definition; the tensor system only supplies
  // the characteristic polynomial.
  Vec<QuadExt> x = v;
  QuadExt an(1), am(1);
  for (std::size_t n = 0; n <= n_max + d; ++n) {
    QuadExt p(1);
    for (const auto& l : pieces) p *= l(x) - c * an;
    seq.values.push_back(p);
    seq.normalized.push_back(p / am);
    seq.any_zero = seq.any_zero || p == QuadExt(0);
    x = a * x;
    an *= alpha;
    am *= alpha_m;
  }
  const auto& cs = seq.system.charpoly.coeffs();
  for (std::size_t n = 0; n <= n_max; ++n) {
    QuadExt r(0);
    for (std::size_t i = 0; i <= d; ++i) r += cs[i] * seq.values[n + i];
    seq.residuals.push_back(r);
  }
  return seq;
}

std::vector<QuadExt> PnSequence::extend_backward(std::size_t count) const {
  const auto& cs = system.charpoly.coeffs();
  std::size_t d = degree();
  if (cs[0] == QuadExt(0)) throw DomainError("c_0 = 0: the recurrence cannot run backwards");
  std::vector<QuadExt> window(values.begin(), values.begin() + static_cast<long>(d));  // P_0..P_{d-1}
  std::vector<QuadExt> out;
  for (std::size_t s = 0; s < count; ++s) {
    QuadExt acc(0);
    for (std::size_t i = 1; i <= d; ++i) acc += cs[i] * window[i - 1];
    QuadExt prev = -acc / cs[0];
    out.push_back(prev);
    window.insert(window.begin(), prev);
    window.pop_back();
  }
  return out;
}

PnSequence pn_sequence(const PAClass& g, const ChartPoint& z, unsigned n_max) {
  QuadExt c = c_constant(g, z);
  QuadExt alpha = pow(stretch_factor(g), 2);
  Matrix<QuadExt> a = to_quad(power(inverse(g.matrix()), 2));
  PLForm f = torus_intersection_form(z.weights);
  std::vector<LinearForm<QuadExt>> pieces;
  for (const auto& p : f.pieces) pieces.push_back(p.form);
  return pn_sequence(a, pieces, z.weights, c, alpha, n_max);
}

std::vector<Enclosure> arithmetic_residue(const std::vector<Real>& values, const Real& c, const Rational& eps) {
  if (sign(c) <= 0) throw DomainError("lattice spacing c must be positive");
  Enclosure ce = c.enclosure();
  std::vector<Enclosure> out;
  for (const auto& v : values) {
    if (sign(v) <= 0) throw DomainError("arithmetic residue needs positive values");
    Enclosure l = log(v.enclosure());
    Enclosure lr = l.to_bits(64), cr = ce.to_bits(64);
    Integer k = floor(lr.midpoint() / cr.midpoint() + Rational(1, 2));
    Enclosure best = abs(l - Enclosure(Rational(k)) * ce);
    for (long dk : {-1L, 1L}) best = min(best, abs(l - Enclosure(Rational(k + dk)) * ce));
    out.push_back(refine(best, eps));
  }
  return out;
}

}  // namespace crossratio
