#include <cstring>
#include <random>

#include "crossratio/errors.hpp"
#include "crossratio/pf.hpp"
#include "crossratio/thurstonveech.hpp"
#include "doctest.h"

using namespace crossratio;
using M = Matrix<Rational>;
using QM = Matrix<QuadExt>;

namespace {

QM to_quad(const M& m) {
  QM q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = QuadExt(m(i, j));
  return q;
}

QuadExt exact(const Real& r) {
  REQUIRE(r.is_exact());
  return *r.exact();
}

}  // namespace

TEST_CASE("single curve pair recovers the torus twists") {
  CurveSystem cs = make_curve_system(M{{1}});
  CHECK(exact(cs.mu) == QuadExt(1));
  TVRep rep = build_rep(cs);
  REQUIRE(rep.ta);
  CHECK(*rep.ta == to_quad(M{{1, 1}, {0, 1}}));
  CHECK(*rep.tb == to_quad(M{{1, 0}, {-1, 1}}));
  CHECK(determinant(*rep.ta) == QuadExt(1));
  CHECK(determinant(*rep.tb) == QuadExt(1));
}

TEST_CASE("the 2x2 all-ones system") {
  CurveSystem cs = make_curve_system(M{{1, 1}, {1, 1}});
  CHECK(cs.intersections * cs.intersections.transpose() == M{{2, 2}, {2, 2}});
  CHECK(exact(cs.mu) == QuadExt(4));
  TVRep rep = build_rep(cs);
  CHECK(exact(rep.sqrt_mu) == QuadExt(2));
  QM prod = *rep.ta * inverse(*rep.tb);
  CHECK(prod == to_quad(M{{5, 2}, {2, 1}}));
  QuadExt l1 = exact(tv_stretch(cs, parse_word("A B^-1")));
  CHECK(l1 == QuadExt(3, 2, 2));
  CHECK(std::abs(l1.to_double() - 5.828427) < 1e-6);
  QM a2b = *rep.ta * *rep.ta * inverse(*rep.tb);
  CHECK(a2b == to_quad(M{{9, 4}, {2, 1}}));
  QuadExt l2 = exact(tv_stretch(cs, parse_word("A²B⁻¹")));
  CHECK(l2 == QuadExt(5, 2, 6));
  CHECK(std::abs(l2.to_double() - 9.898979) < 1e-6);
  CHECK(exact(tv_stretch(cs, parse_word("(A B^-1)^2"))) == pow(l1, 2));
}

TEST_CASE("N = [[2]] shares the sqrt(mu) = 2 representation") {
  CurveSystem cs = make_curve_system(M{{2}});
  CHECK(exact(cs.mu) == QuadExt(4));
  TVRep rep = build_rep(cs);
  CHECK(*rep.ta == *build_rep(make_curve_system(M{{1, 1}, {1, 1}})).ta);
}

TEST_CASE("curve system validation") {
  CHECK_THROWS_AS(make_curve_system(M{{1, 0}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(make_curve_system(M{{1, 0}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(make_curve_system(M{{-1}}), ValidationError);
  CHECK_THROWS_AS(make_curve_system(M{{Rational(1, 2)}}), ValidationError);
  CurveSystem cs = make_curve_system(M{{1, 1}, {1, 1}});
  CHECK_THROWS_AS(tv_stretch(cs, parse_word("A B")), HypothesisViolation);
  CHECK_THROWS_AS(tv_stretch(cs, parse_word("A A")), HypothesisViolation);
  CHECK_THROWS_AS(tv_stretch(cs, parse_word("A C")), ValidationError);
}

TEST_CASE("mu(N Nᵀ) = mu(Nᵀ N)") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> dim(1, 3), entry(0, 3);
  int checked = 0;
  while (checked < 40) {
    std::size_t p = static_cast<std::size_t>(dim(rng)), q = static_cast<std::size_t>(dim(rng));
    M n(p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) n(i, j) = entry(rng) == 0 ? 0 : entry(rng) + 1;
    CurveSystem a, b;
    try {
      a = make_curve_system(n);
      b = make_curve_system(n.transpose());
    } catch (const DomainError&) {
      continue;  // not filling
    } catch (const HypothesisViolation&) {
      continue;  // N Nᵀ not primitive: the pair is disconnected
    }
    ++checked;
    if (a.mu.is_exact() && b.mu.is_exact()) {
      CHECK(exact(a.mu) == exact(b.mu));
    } else {
      Enclosure d = (a.mu.enclosure() - b.mu.enclosure()).to_bits(50);
      CHECK(d.contains(0));
    }
  }
}

TEST_CASE("Penner words are pseudo-Anosov with the predicted trace") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> len(2, 7), pick(0, 1);
  CurveSystem cs = make_curve_system(M{{1, 2}, {1, 1}});
  for (int trial = 0; trial < 30; ++trial) {
    std::string w = "A B^-1 ";
    for (int i = 0, n = len(rng); i < n; ++i) w += pick(rng) ? "A " : "B^-1 ";
    Word word = parse_word(w);
    Real lambda = tv_stretch(cs, word);
    CHECK(sign(lambda - Real(1)) > 0);
    // trace(word) at the numeric sqrt(mu), computed by floating matrices.
    double s = std::sqrt(cs.mu.to_double());
    double m[2][2] = {{1, 0}, {0, 1}};
    for (const auto& l : word) {
      double g[2][2] = {{1, l.name == "A" ? s : 0}, {l.name == "B" ? s : 0, 1}};
      double r[2][2] = {{m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]},
                        {m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]}};
      std::memcpy(m, r, sizeof m);
    }
    double tr = m[0][0] + m[1][1];
    double expect = (tr + std::sqrt(tr * tr - 4)) / 2;
    CHECK(std::abs(lambda.to_double() - expect) < 1e-9 * expect);
  }
}

TEST_CASE("quadratic square roots") {
  CHECK(quadratic_sqrt(QuadExt(3, 2, 2)) == QuadExt(1, 1, 2));  // (1+√2)²
  CHECK(quadratic_sqrt(QuadExt(4)) == QuadExt(2));
  CHECK(quadratic_sqrt(QuadExt(2)) == QuadExt(0, 1, 2));
  CHECK(!quadratic_sqrt(QuadExt(1, 1, 2)));
  CHECK(!quadratic_sqrt(QuadExt(-1)));
}
