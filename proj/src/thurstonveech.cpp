#include "crossratio/thurstonveech.hpp"

#include "crossratio/errors.hpp"
#include "crossratio/pf.hpp"

namespace crossratio {

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  QuadExt r = QuadExt::sqrt_of(q);
  if (!r.is_rational()) return std::nullopt;
  return r.a();
}

Real leading_eigenvalue(const Matrix<Rational>& s) {
  if (s.dim() == 1) return Real(s(0, 0));
  if (s.dim() == 2) {
    // Symmetric: a repeated eigenvalue forces a scalar matrix.
    if (s(0, 1) == 0 && s(0, 0) == s(1, 1)) return Real(s(0, 0));
    return Real(quad_eigen(s).lambda);
  }
  return Real(pf_data(s).lambda);
}

}  // namespace

CurveSystem make_curve_system(const Matrix<Rational>& n) {
  if (n.rows() == 0 || n.cols() == 0) throw ValidationError("intersection matrix is empty");
  for (const auto& x : n.entries()) {
    if (x < 0 || x.get_den() != 1) throw ValidationError("intersection numbers must be nonnegative integers");
  }
  for (std::size_t i = 0; i < n.rows(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n.cols(); ++j) any = any || n(i, j) > 0;
    if (!any) throw DomainError("multicurves do not fill: row " + std::to_string(i + 1) + " of N is zero");
  }
  for (std::size_t j = 0; j < n.cols(); ++j) {
    bool any = false;
    for (std::size_t i = 0; i < n.rows(); ++i) any = any || n(i, j) > 0;
    if (!any) throw DomainError("multicurves do not fill: column " + std::to_string(j + 1) + " of N is zero");
  }
  return {n, leading_eigenvalue(n * n.transpose())};
}

std::optional<QuadExt> quadratic_sqrt(const QuadExt& x) {
  if (x.sign() < 0) return std::nullopt;
  if (x.is_rational()) return QuadExt::sqrt_of(x.a());
  // (u + v√d)² = a + b√d  ⇔  u² + d v² = a, 2uv = b.
  auto r = rational_sqrt(x.norm());
  if (!r) return std::nullopt;
  for (const Rational& u2 : {Rational((x.a() + *r) / 2), Rational((x.a() - *r) / 2)}) {
    auto u = rational_sqrt(u2);
    if (!u || *u == 0) continue;
    QuadExt cand(*u, x.b() / (2 * *u), x.d());
    if (cand * cand == x) return cand.sign() < 0 ? -cand : cand;
  }
  return std::nullopt;
}

TVRep build_rep(const CurveSystem& cs) {
  TVRep rep;
  if (const QuadExt* m = cs.mu.exact()) {
    if (auto s = quadratic_sqrt(*m)) {
      rep.sqrt_mu = Real(*s);
      rep.ta = Matrix<QuadExt>{{QuadExt(1), *s}, {QuadExt(0), QuadExt(1)}};
      rep.tb = Matrix<QuadExt>{{QuadExt(1), QuadExt(0)}, {-*s, QuadExt(1)}};
      return rep;
    }
  }
  rep.sqrt_mu = Real(sqrt(cs.mu.enclosure()));
  return rep;
}

RationalPolynomial tv_trace_polynomial(const Word& word) {
  for (const auto& l : word) {
    if (l.name != "A" && l.name != "B") throw ValidationError("Thurston-Veech words use the letters A and B, got '" + l.name + "'");
  }
  std::vector<Rational> nodes, traces;
  for (std::size_t k = 0; k <= word.size(); ++k) {
    Rational s(static_cast<long>(k));
    std::map<std::string, Matrix<Rational>> gens = {{"A", Matrix<Rational>{{1, s}, {0, 1}}},
                                                    {"B", Matrix<Rational>{{1, 0}, {Rational(-s), 1}}}};
    nodes.push_back(s);
    traces.push_back(word_eval(word, gens).trace());
  }
  RationalPolynomial in_s = interpolate(nodes, traces);
  std::vector<Rational> in_mu;
  for (long i = 0; i <= in_s.degree(); ++i) {
    if (i % 2 == 1) {
      if (in_s.coeff(i) != 0) throw Error("internal: odd power of s in a Thurston-Veech trace");
      continue;
    }
    in_mu.push_back(in_s.coeff(i));
  }
  return RationalPolynomial(std::move(in_mu));
}

Real tv_stretch(const CurveSystem& cs, const Word& word) {
  auto [a_pos, a_neg] = exponent_split(word, "A");
  auto [b_pos, b_neg] = exponent_split(word, "B");
  RationalPolynomial tau = tv_trace_polynomial(word);
  if (a_neg != 0 || b_pos != 0 || a_pos == 0 || b_neg == 0) {
    throw HypothesisViolation("word " + to_string(word) +
                              " is not sign-definite in A and B^-1; pseudo-Anosov class not guaranteed");
  }
  if (const QuadExt* m = cs.mu.exact()) {
    QuadExt t = tau(*m);
    if (auto root = quadratic_sqrt(t * t - QuadExt(4))) return Real((t + *root) / QuadExt(2));
  }
  Enclosure t = tau(cs.mu.enclosure());
  return Real((t + sqrt(t * t - Enclosure(Rational(4)))) / Enclosure(Rational(2)));
}

}  // namespace crossratio
