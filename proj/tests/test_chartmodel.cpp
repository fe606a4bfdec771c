#include <random>

#include "crossratio/chartmodel.hpp"
#include "crossratio/errors.hpp"
#include "doctest.h"

using namespace crossratio;
using M = Matrix<Rational>;

namespace {

QuadExt r5(const Rational& a, const Rational& b) { return QuadExt(a, b, 5); }

QuadExt exact(const Real& r) {
  REQUIRE(r.is_exact());
  return *r.exact();
}

const Vec<QuadExt> kZ{QuadExt(2), r5(1, 1)};

}  // namespace

TEST_CASE("carried actions on the torus chart") {
  ChartSystem cs = ChartSystem::torus();
  CHECK(cs.cone_preserving("R"));
  CHECK(cs.cone_preserving("L"));
  CarriedAction a = carried_action(cs, parse_word("(RL)^-2"));
  CHECK(a.matrix == M{{2, -3}, {-3, 5}});
  CHECK(a.matrix == inverse(power(M{{2, 1}, {1, 1}}, 2)));
  CHECK(!a.cone_preserving);
  CarriedAction e = carried_action(cs, parse_word(""));
  CHECK(e.matrix == M::identity(2));
  CHECK(e.cone_preserving);
  CHECK(carried_action(cs, parse_word("R L")).cone_preserving);
  CHECK_THROWS_AS(carried_action(cs, parse_word("X")), ValidationError);
}

TEST_CASE("cone flags on a 3-dim chart") {
  // P is a permutation: its inverse is again nonnegative, so P⁻¹ keeps the flag.
  ChartSystem cs("tri", {{"P", M{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}, {"S", M{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}});
  CHECK(cs.dim() == 3);
  CHECK(carried_action(cs, parse_word("P^-1 S")).cone_preserving);
  CHECK(!carried_action(cs, parse_word("S^-1")).cone_preserving);
  // Flag soundness on random positive vectors.
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<long> c(1, 20);
  for (const char* w : {"P S", "S S P", "P^-1 S P"}) {
    CarriedAction a = carried_action(cs, parse_word(w));
    REQUIRE(a.cone_preserving);
    for (int s = 0; s < 50; ++s) {
      Vec<Rational> v{Rational(c(rng)), Rational(c(rng)), Rational(c(rng))};
      for (const auto& x : a.matrix * v) CHECK(x > 0);
    }
  }
  CHECK_THROWS_AS(ChartSystem("bad", {{"Z", M{{1, 1}, {1, 1}}}}), ValidationError);
}

TEST_CASE("intersection functional examples") {
  ChartSystem cs = ChartSystem::torus();
  IntersectionFunctional wg = intersection_functional(cs, parse_word("R L"));
  REQUIRE(wg.exact_form());
  const auto& c = wg.exact_form()->coeffs();
  CHECK(c[0] * r5(-1, 1) == c[1] * QuadExt(2));  // ∝ (2, √5−1)
  Vec<QuadExt> gplus{QuadExt(2), r5(-1, 1)}, hplus{QuadExt(2), r5(1, 1)};
  CHECK(exact(wg.ratio(hplus, gplus)) == QuadExt(8) / r5(10, -2));
  IntersectionFunctional wh = intersection_functional(cs, parse_word("L R"));
  const auto& d = wh.exact_form()->coeffs();
  CHECK(d[0] * r5(1, 1) == d[1] * QuadExt(2));  // ∝ (2, 1+√5)
  CHECK_THROWS_AS(intersection_functional(cs, parse_word("R")), HypothesisViolation);
}

TEST_CASE("functional is proportional to intersection with the stable foliation") {
  ChartSystem cs = ChartSystem::torus();
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> c(1, 40), d(1, 9);
  for (const char* w : {"R L", "R R L", "R L L L R", "L R R L"}) {
    PAClass g = PAClass::from_word(w);
    auto f = fixed_foliations(g);
    IntersectionFunctional wf = intersection_functional(cs, parse_word(w));
    QuadExt base = exact(intersection(f.plus, f.minus));
    Real first_ratio;
    for (int s = 0; s < 100; ++s) {
      Vec<QuadExt> u{QuadExt(Rational(c(rng), d(rng))), QuadExt(Rational(c(rng), d(rng)))};
      // The ratio functional(u)/functional(g⁺) must equal i(u,g⁻)/i(g⁺,g⁻).
      QuadExt lhs = exact(wf.ratio(u, f.plus.weights));
      QuadExt rhs = exact(intersection(ChartPoint(u), f.minus)) / base;
      CHECK(lhs == rhs);
    }
    CHECK(exact(wf.ratio(f.plus.weights, f.plus.weights)) == QuadExt(1));
  }
}

TEST_CASE("functional in dimension 3 is certified") {
  ChartSystem cs("tri", {{"A", M{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}}});
  IntersectionFunctional w = intersection_functional(cs, parse_word("A"));
  CHECK(!w.exact_form());
  // A is circulant: every left eigenvector entry equals 1.
  for (const auto& x : w.coefficients()) CHECK(x.to_bits(50).contains(1));
  Real r = w.ratio({QuadExt(1), QuadExt(2), QuadExt(3)}, {QuadExt(1), QuadExt(1), QuadExt(1)});
  CHECK(r.enclosure().to_bits(50).contains(2));
}

TEST_CASE("torus intersection form evaluation") {
  PLForm f = torus_intersection_form(kZ);
  PLValue a = pl_eval(f, {QuadExt(0), QuadExt(1)});
  CHECK(a.value == QuadExt(2));
  CHECK(a.piece == 1);
  PLValue b = pl_eval(f, kZ);
  CHECK(b.value == QuadExt(0));
  CHECK(f.pieces[0].contains(kZ));
  CHECK(f.pieces[1].contains(kZ));
  PLValue c = pl_eval(f, {QuadExt(1), QuadExt(0)});
  CHECK(c.value == r5(1, 1));
  CHECK(c.piece == 2);
  CHECK_THROWS_AS(pl_eval(f, {QuadExt(1)}), ValidationError);
}

TEST_CASE("torus intersection form equals i(z, .) and is convex") {
  PLForm f = torus_intersection_form(kZ);
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<long> c(-25, 25), t(0, 8);
  for (int s = 0; s < 300; ++s) {
    Vec<QuadExt> u{r5(c(rng), c(rng)), r5(c(rng), c(rng))}, w{r5(c(rng), c(rng)), r5(c(rng), c(rng))};
    if (u[0] == QuadExt(0) && u[1] == QuadExt(0)) continue;
    CHECK(pl_eval(f, u).value == exact(intersection(ChartPoint(kZ), ChartPoint(u))));
    CHECK(convexity_probe(f, u, w, Rational(t(rng), 8)));
    CHECK(convexity_probe(f, u, u, Rational(1, 3)));
    CHECK(convexity_probe(f, u, w, 0));
    CHECK(pl_continuous_at(f, u));
  }
  // Boundary points: multiples of z lie in both pieces.
  for (long k = -3; k <= 3; ++k) CHECK(pl_continuous_at(f, {QuadExt(2 * k), r5(k, k)}));
  CHECK(!convexity_scan(f, kZ, 1));
}

TEST_CASE("max and min of linear forms") {
  std::vector<LinearForm<QuadExt>> forms{{QuadExt(-1), QuadExt(0)}, {QuadExt(0), QuadExt(-1)}};
  PLForm mx = max_of_linear(forms), mn = min_of_linear(forms);
  CHECK(pl_eval(mx, {QuadExt(1), QuadExt(2)}).value == QuadExt(-1));
  CHECK(pl_eval(mn, {QuadExt(1), QuadExt(2)}).value == QuadExt(-2));
  CHECK(pl_continuous_at(mx, {QuadExt(3), QuadExt(3)}));
  CHECK(!convexity_scan(mx, {QuadExt(0), QuadExt(0)}, 7));
  auto bad = convexity_scan(mn, {QuadExt(0), QuadExt(0)}, 7);
  REQUIRE(bad);
  CHECK(!convexity_probe(mn, bad->u, bad->w, bad->t));
  // A piece set with a hole: domain error.
  PLForm partial;
  partial.dim = 1;
  partial.pieces.push_back({{LinearForm<QuadExt>{QuadExt(1)}}, LinearForm<QuadExt>{QuadExt(1)}});
  CHECK_THROWS_AS(pl_eval(partial, {QuadExt(-1)}), DomainError);
}

TEST_CASE("chart nesting for g = RL") {
  // U = open cone spanned by (−1, 1) and (−1, 2); it contains the direction
  // of g⁻ = (2, −1−√5) up to sign, slope −(1+√5)/2.
  auto in_u = [](const Vec<Rational>& v) { return -2 * v[0] - v[1] > 0 && v[0] + v[1] > 0; };
  auto in_u_quad = [](const Vec<QuadExt>& v) {
    return QuadExt(-2) * v[0] - v[1] > QuadExt(0) && v[0] + v[1] > QuadExt(0);
  };
  CHECK(in_u_quad({QuadExt(-2), r5(1, 1)}));
  ChartSystem cs = ChartSystem::torus();
  M a = carried_action(cs, parse_word("(RL)^-2")).matrix;
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> c(1, 30);
  for (int s = 0; s < 200; ++s) {
    long x = c(rng), y = c(rng);
    Vec<Rational> v{Rational(-x - y), Rational(x + 2 * y)};
    REQUIRE(in_u(v));
    CHECK(in_u(a * v));
  }
  // Spanning vectors map inside, so the whole cone does.
  CHECK(in_u(a * Vec<Rational>{-1, 1}));
  CHECK(in_u(a * Vec<Rational>{-1, 2}));
  CHECK(!maps_cone_into_cone(a));
}

TEST_CASE("ConvergenceSpec validation") {
  ConvergenceSpec spec;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.samples.push_back({QuadExt(1), QuadExt(0)});
  spec.validate();
  spec.tolerance = 0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}
