#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "zipring/polynomial.hpp"

using namespace zipring;

namespace {

// Evaluation at a rational point; an exact, independent check of the ring
// operations (hom property must hold at every point, not just generically).
Rational eval(const Polynomial& f, const std::vector<Rational>& x) {
  Rational total = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational term = c;
    for (size_t i = 0; i < m.exp.size(); ++i)
      for (uint32_t k = 0; k < m.exp[i]; ++k) term *= x[i];
    total += term;
  }
  return total;
}

Polynomial random_poly(std::mt19937& rng, const std::vector<int>& weights, int nterms) {
  std::uniform_int_distribution<int> e(0, 3);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  Polynomial f(weights);
  for (int t = 0; t < nterms; ++t) {
    std::vector<uint32_t> exp(weights.size());
    for (auto& v : exp) v = static_cast<uint32_t>(e(rng));
    f.add_term(std::move(exp), make_rational(num(rng), den(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("arithmetic commutes with evaluation") {
  std::mt19937 rng(31337);
  std::vector<int> weights = {1, 2, 3};
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial a = random_poly(rng, weights, 4);
    Polynomial b = random_poly(rng, weights, 4);
    std::vector<Rational> x;
    for (size_t i = 0; i < weights.size(); ++i) x.push_back(make_rational(num(rng), den(rng)));
    CHECK(eval(a + b, x) == eval(a, x) + eval(b, x));
    CHECK(eval(a - b, x) == eval(a, x) - eval(b, x));
    CHECK(eval(a * b, x) == eval(a, x) * eval(b, x));
    CHECK(eval(a * Rational(7, 2), x) == eval(a, x) * Rational(7, 2));
  }
}

TEST_CASE("zero coefficients are never stored") {
  Polynomial f({1, 2});
  f.add_term({1, 0}, Rational(2));
  f.add_term({1, 0}, Rational(-2));
  CHECK(f.is_zero());
  CHECK(f.term_count() == 0);
  CHECK(f.degree() == -1);
  f.add_term({0, 1}, Rational(1, 3));
  CHECK(f.term_count() == 1);
  f += f;
  CHECK(f.term_count() == 1);
  CHECK(*f.coeff(f.make_monomial({0, 1})) == Rational(2, 3));
}

TEST_CASE("weighted degree and homogeneity") {
  Polynomial f({1, 2, 3});
  f.add_term({2, 0, 1}, Rational(1));  // degree 5
  CHECK(f.degree() == 5);
  CHECK(f.is_homogeneous());
  f.add_term({0, 1, 1}, Rational(-3));  // also degree 5
  CHECK(f.is_homogeneous());
  f.add_term({1, 0, 0}, Rational(2));
  CHECK(!f.is_homogeneous());
  CHECK(f.degree() == 5);
  CHECK(f.support_degrees() == std::vector<long>{1, 5});
}

TEST_CASE("graded components partition the polynomial") {
  std::mt19937 rng(55);
  Polynomial f = random_poly(rng, {1, 2, 3}, 8);
  Polynomial sum(std::vector<int>{1, 2, 3});
  for (long d : f.support_degrees()) {
    Polynomial part = f.graded_component(d);
    CHECK(part.is_homogeneous());
    if (!part.is_zero()) CHECK(part.degree() == d);
    sum += part;
  }
  CHECK(sum == f);
  CHECK(f.graded_component(999).is_zero());
}

TEST_CASE("canonical text output") {
  Polynomial f({1, 2});
  f.add_term({2, 0}, Rational(-1, 2));
  f.add_term({0, 1}, Rational(1));
  CHECK(f.to_string() == "-1/2*u1^2 + u2");
  CHECK(f.to_string("v") == "-1/2*v1^2 + v2");
  CHECK(f.to_string(std::vector<std::string>{"a", "b"}) == "-1/2*a^2 + b");
  CHECK(Polynomial({1}).to_string() == "0");
  CHECK(Polynomial::constant({1, 2}, Rational(-3, 4)).to_string() == "-3/4");
  Polynomial g({1, 1});
  g.add_term({1, 1}, Rational(1));
  g.add_term({0, 0}, Rational(-2));
  CHECK(g.to_string("x") == "x1*x2 - 2");
}

TEST_CASE("JSON round trip") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial f = random_poly(rng, {1, 2}, 5);
    Polynomial back = Polynomial::from_json_string(f.to_json_string());
    CHECK(back == f);
    CHECK(back.weights() == f.weights());
  }
  Polynomial z({3, 1});
  CHECK(Polynomial::from_json_string(z.to_json_string()) == z);
  CHECK_THROWS(Polynomial::from_json_string("not json"));
  CHECK_THROWS(Polynomial::from_json_string("{\"weights\":[1]}"));
}

TEST_CASE("generator and constant factories") {
  Polynomial u2 = Polynomial::generator({1, 2, 3}, 1);
  CHECK(u2.degree() == 2);
  CHECK(u2.term_count() == 1);
  CHECK(u2.to_string() == "u2");
  CHECK_THROWS(Polynomial::generator({1, 2}, 2));
  Polynomial c = Polynomial::constant({1, 2}, Rational(0));
  CHECK(c.is_zero());
}
