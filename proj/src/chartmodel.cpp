#include "crossratio/chartmodel.hpp"

#include <random>

#include "crossratio/errors.hpp"

namespace crossratio {

bool maps_cone_into_cone(const Matrix<Rational>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool positive = false;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0) return false;
      positive = positive || m(i, j) > 0;
    }
    if (!positive) return false;
  }
  return true;
}

ChartSystem::ChartSystem(std::string name, std::map<std::string, Matrix<Rational>> generators)
    : name_(std::move(name)), gens_(std::move(generators)) {
  if (gens_.empty()) throw ValidationError("chart '" + name_ + "' declares no generators");
  dim_ = gens_.begin()->second.rows();
  for (const auto& [g, m] : gens_) {
    if (!m.is_square() || m.rows() != dim_) throw ValidationError("generator '" + g + "' has the wrong shape");
    if (determinant(m) == 0) throw ValidationError("generator '" + g + "' is not invertible");
    flags_[g] = maps_cone_into_cone(m);
  }
}

ChartSystem ChartSystem::torus() { return ChartSystem(std::string(kTorusChart), torus_generators()); }

bool ChartSystem::cone_preserving(const std::string& generator) const {
  auto it = flags_.find(generator);
  if (it == flags_.end()) throw ValidationError("unbound generator '" + generator + "'");
  return it->second;
}

CarriedAction carried_action(const ChartSystem& cs, const Word& word) {
  CarriedAction out{word_eval(word, cs.generators()), true};
  if (word.empty()) out.matrix = Matrix<Rational>::identity(cs.dim());
  std::map<std::string, bool> inverse_flags;
  for (const auto& l : word) {
    if (l.power > 0) {
      out.cone_preserving = out.cone_preserving && cs.cone_preserving(l.name);
    } else {
      auto it = inverse_flags.find(l.name);
      if (it == inverse_flags.end())
        it = inverse_flags.emplace(l.name, maps_cone_into_cone(inverse(cs.generators().at(l.name)))).first;
      out.cone_preserving = out.cone_preserving && it->second;
    }
  }
  return out;
}

IntersectionFunctional::IntersectionFunctional(const PFData& pf) : coeffs_(pf.left) {
  if (pf.exact) exact_ = LinearForm<QuadExt>(pf.exact->left);
}

Real IntersectionFunctional::pairing(const Vec<QuadExt>& u) const {
  if (u.size() != dim()) throw ValidationError("vector dimension does not match the functional");
  if (exact_) {
    // Real arithmetic keeps the pairing exact within one field and falls
    // back to enclosures when u lives in another.
    Real s(0);
    for (std::size_t i = 0; i < u.size(); ++i) s = s + Real(exact_->coeffs()[i]) * Real(u[i]);
    return s;
  }
  Enclosure s(Rational(0));
  for (std::size_t i = 0; i < u.size(); ++i) s = s + coeffs_[i] * u[i].to_enclosure();
  return Real(s);
}

Real IntersectionFunctional::ratio(const Vec<QuadExt>& u, const Vec<QuadExt>& v) const {
  Real den = abs(pairing(v));
  if (sign(den) == 0) throw UndefinedCrossRatio("functional vanishes on the reference vector");
  return abs(pairing(u)) / den;
}

IntersectionFunctional intersection_functional(const ChartSystem& cs, const Word& g) {
  CarriedAction act = carried_action(cs, g);
  if (cs.name() == kTorusChart) PAClass(g, act.matrix).pf();  // rejects non-pseudo-Anosov classes
  return IntersectionFunctional(pf_data(act.matrix));
}

bool PLPiece::contains(const Vec<QuadExt>& u) const {
  for (const auto& l : region)
    if (l(u).sign() < 0) return false;
  return true;
}

namespace {

LinearForm<QuadExt> det_form(const Vec<QuadExt>& z) {
  if (z.size() != 2) throw ValidationError("torus intersection form needs a 2-vector");
  return LinearForm<QuadExt>{-z[1], z[0]};  // det(z, u) = z₀u₁ − z₁u₀
}

PLForm extremal(const std::vector<LinearForm<QuadExt>>& forms, bool maximum) {
  if (forms.empty()) throw ValidationError("piecewise-linear form needs at least one piece");
  PLForm f;
  f.dim = forms[0].dim();
  for (std::size_t j = 0; j < forms.size(); ++j) {
    if (forms[j].dim() != f.dim) throw ValidationError("piece dimension mismatch");
    PLPiece p;
    p.form = forms[j];
    for (std::size_t k = 0; k < forms.size(); ++k)
      if (k != j) p.region.push_back(maximum ? forms[j] - forms[k] : forms[k] - forms[j]);
    f.pieces.push_back(std::move(p));
  }
  return f;
}

Vec<QuadExt> combine(const Vec<QuadExt>& u, const Vec<QuadExt>& w, const Rational& t) {
  Vec<QuadExt> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = QuadExt(t) * u[i] + QuadExt(1 - t) * w[i];
  return x;
}

}  // namespace

PLForm torus_intersection_form(const Vec<QuadExt>& z) {
  LinearForm<QuadExt> l1 = det_form(z);
  LinearForm<QuadExt> l2 = -l1;
  PLForm f;
  f.dim = 2;
  f.pieces.push_back({{l1}, l1});
  f.pieces.push_back({{l2}, l2});
  return f;
}

PLForm max_of_linear(const std::vector<LinearForm<QuadExt>>& forms) { return extremal(forms, true); }
PLForm min_of_linear(const std::vector<LinearForm<QuadExt>>& forms) { return extremal(forms, false); }

PLValue pl_eval(const PLForm& f, const Vec<QuadExt>& u) {
  if (u.size() != f.dim) throw ValidationError("point dimension does not match the piecewise-linear form");
  for (std::size_t j = 0; j < f.pieces.size(); ++j)
    if (f.pieces[j].contains(u)) return {f.pieces[j].form(u), j + 1};
  throw DomainError("point lies outside every piece of the piecewise-linear form");
}

bool convexity_probe(const PLForm& f, const Vec<QuadExt>& u, const Vec<QuadExt>& w, const Rational& t) {
  if (t < 0 || t > 1) throw ValidationError("convexity probe needs t in [0, 1]");
  QuadExt lhs = pl_eval(f, combine(u, w, t)).value;
  QuadExt rhs = QuadExt(t) * pl_eval(f, u).value + QuadExt(1 - t) * pl_eval(f, w).value;
  return lhs <= rhs;
}

bool pl_continuous_at(const PLForm& f, const Vec<QuadExt>& u) {
  std::optional<QuadExt> seen;
  for (const auto& p : f.pieces) {
    if (!p.contains(u)) continue;
    QuadExt v = p.form(u);
    if (seen && !(*seen == v)) return false;
    seen = v;
  }
  return true;
}

std::optional<ConvexityWitness> convexity_scan(const PLForm& f, const Vec<QuadExt>& center, std::uint64_t seed,
                                               int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-16, 16);
  auto jitter = [&] {
    Vec<QuadExt> x = center;
    for (auto& c : x) c += QuadExt(Rational(num(rng), 8));
    return x;
  };
  const Rational ts[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (int s = 0; s < samples; ++s) {
    Vec<QuadExt> u = jitter(), w = jitter();
    for (const auto& t : ts)
      if (!convexity_probe(f, u, w, t)) return ConvexityWitness{u, w, t};
  }
  return std::nullopt;
}

void ConvergenceSpec::validate() const {
  if (tolerance <= 0) throw ValidationError("tolerance must be positive");
  if (samples.empty()) throw ValidationError("convergence sample set is empty");
  if (n_max < n_min) throw ValidationError("n_max must be at least n_min");
}

}  // namespace crossratio
