#include <random>

#include "crossratio/errors.hpp"
#include "crossratio/matrix.hpp"
#include "crossratio/quadext.hpp"
#include "crossratio/tensor.hpp"
#include "crossratio/word.hpp"
#include "doctest.h"

using namespace crossratio;
using M = Matrix<Rational>;

namespace {

const std::map<std::string, M> kTwists = {{"R", M{{1, 1}, {0, 1}}}, {"L", M{{1, 0}, {1, 1}}}};

M random_integer_matrix(std::mt19937_64& rng, std::size_t n, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  M m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

/// Product of entries of naive multiplication, used as an independent oracle.
M naive_product(const M& a, const M& b) {
  M c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

}  // namespace

TEST_CASE("word_eval over the twist generators") {
  CHECK(word_eval(parse_word("R L"), kTwists) == naive_product(kTwists.at("R"), kTwists.at("L")));
  CHECK(word_eval(parse_word("R L"), kTwists) == M{{2, 1}, {1, 1}});
  CHECK(word_eval(parse_word(""), kTwists) == M::identity(2));
  CHECK(word_eval(parse_word("R R⁻¹"), kTwists) == M::identity(2));
  CHECK(word_eval(parse_word("R^-1 R"), kTwists) == M::identity(2));
  CHECK(word_eval(parse_word("(RL)^2"), kTwists) == M{{5, 3}, {3, 2}});
  CHECK(word_eval(parse_word("RLLR"), kTwists) == M{{3, 4}, {2, 3}});
  CHECK_THROWS_AS(word_eval(parse_word("X"), kTwists), ValidationError);
  std::map<std::string, M> singular = {{"S", M{{1, 2}, {2, 4}}}};
  CHECK_THROWS_AS(word_eval(parse_word("S^-1"), singular), DomainError);
}

TEST_CASE("word parsing") {
  CHECK(to_string(parse_word("A²B⁻¹")) == to_string(parse_word("A A B^-1")));
  CHECK(parse_word("R L L⁻¹ R⁻¹").empty());
  CHECK(parse_word("a1 b_2").size() == 2);
  CHECK(exponent_split(parse_word("A^3 B^-2 A^-1"), "A") == std::pair{3, -1});
  CHECK(inverse(parse_word("R L")) == parse_word("L^-1 R^-1"));
  CHECK_THROWS_AS(parse_word("R^"), ValidationError);
  CHECK_THROWS_AS(parse_word("(R L"), ValidationError);
}

TEST_CASE("determinant of a word is the product of generator determinants") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 8), pick(0, 1), sign(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    std::map<std::string, M> gens;
    M a = random_integer_matrix(rng, 3, 3), b = random_integer_matrix(rng, 3, 3);
    if (determinant(a) == 0 || determinant(b) == 0) continue;
    gens["A"] = a;
    gens["B"] = b;
    Word w;
    Rational expected = 1;
    for (int i = 0, n = len(rng); i < n; ++i) {
      Letter l{pick(rng) ? "A" : "B", sign(rng) ? 1 : -1};
      Rational d = determinant(gens[l.name]);
      expected *= l.power > 0 ? d : Rational(1 / d);
      w.push_back(l);
    }
    CHECK(determinant(word_eval(w, gens)) == expected);
  }
}

TEST_CASE("char_poly examples") {
  CHECK(char_poly(M{{2, 1}, {1, 1}}) == RationalPolynomial{1, -3, 1});
  CHECK(char_poly(M::identity(3)) == RationalPolynomial{-1, 3, -3, 1});
  CHECK(char_poly(M{{0, 0}, {0, 0}}) == RationalPolynomial{0, 0, 1});
  // Over Q(√5): [[φ, 1], [0, 1]] has charpoly (t - φ)(t - 1).
  QuadExt phi(Rational(1, 2), Rational(1, 2), 5);
  Matrix<QuadExt> q{{phi, QuadExt(1)}, {QuadExt(0), QuadExt(1)}};
  auto p = char_poly(q);
  CHECK(p.degree() == 2);
  CHECK(p(phi) == QuadExt(0));
  CHECK(p(QuadExt(1)) == QuadExt(0));
}

TEST_CASE("Cayley-Hamilton on random integer matrices") {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      M m = random_integer_matrix(rng, n, 9);
      auto p = char_poly(m);
      CHECK(p.degree() == static_cast<int>(n));
      CHECK(p.leading() == 1);
      CHECK(evaluate(p, m).is_zero());
      // constant term is (-1)^n det
      Rational det = determinant(m);
      CHECK(p.coeff(0) == (n % 2 ? Rational(-det) : det));
    }
}

TEST_CASE("determinant and inverse") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    M a = random_integer_matrix(rng, 4, 5), b = random_integer_matrix(rng, 4, 5);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
    if (determinant(a) != 0) CHECK(a * inverse(a) == M::identity(4));
  }
  CHECK_THROWS_AS(inverse(M{{1, 2}, {2, 4}}), DomainError);
  M row{{1, 2}};
  CHECK_THROWS_AS(row * row, ValidationError);
}

TEST_CASE("tensor products") {
  M a{{2, 1}, {1, 1}};
  LinearForm<Rational> f{Rational(1), Rational(-1)};
  Vec<Rational> v{Rational(1), Rational(0)};

  auto single = tensor<Rational>({a}, {f}, {v});
  CHECK(single.map == a);
  CHECK(single.form == f);
  CHECK(single.base == v);
  CHECK(single.charpoly == char_poly(a));

  M b{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  auto nine = tensor<Rational>({b, b}, {LinearForm<Rational>{1, 2, 3}, LinearForm<Rational>{0, 1, 1}},
                               {Vec<Rational>{1, 0, 0}, Vec<Rational>{0, 0, 1}});
  CHECK(nine.dim() == 9);
  CHECK(nine.charpoly.degree() == 9);
  CHECK(nine.factor_dims == std::vector<std::size_t>{3, 3});

  CHECK_THROWS_AS(tensor<Rational>({a}, {LinearForm<Rational>{1, 2, 3}}, {v}), ValidationError);
  CHECK_THROWS_AS(tensor<Rational>({a, b}, {f}, {v}), ValidationError);
  CHECK_THROWS_AS(tensor<Rational>({M{{1, 2}, {2, 4}}}, {f}, {v}), DomainError);
  CHECK_THROWS_AS(tensor<Rational>({}, {}, {}), ValidationError);
}

TEST_CASE("tensor rank-one evaluation identity on random factors") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(1, 3), count(1, 3);
  std::uniform_int_distribution<long> coef(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<M> maps;
    std::vector<LinearForm<Rational>> forms;
    std::vector<Vec<Rational>> vecs;
    for (int j = 0, k = count(rng); j < k; ++j) {
      std::size_t n = static_cast<std::size_t>(dim(rng));
      M m;
      do m = random_integer_matrix(rng, n, 3);
      while (determinant(m) == 0);
      Vec<Rational> c(n), v(n);
      for (auto& x : c) x = coef(rng);
      for (auto& x : v) x = coef(rng);
      maps.push_back(m);
      forms.emplace_back(c);
      vecs.push_back(v);
    }
    auto sys = tensor(maps, forms, vecs);
    CHECK(determinant(sys.map) != 0);
    auto orbit = sys.orbit_values(6);
    for (std::size_t n = 0; n < orbit.size(); ++n) {
      Rational prod = 1;
      for (std::size_t j = 0; j < maps.size(); ++j) prod *= forms[j](power(maps[j], static_cast<unsigned>(n)) * vecs[j]);
      CHECK(orbit[n] == prod);
    }
  }
}
