#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conecert/monomial_expr.hpp"
#include "conecert/poly.hpp"

using namespace conecert;

namespace {

Poly x(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

// independent nested-loop multiplication oracle
Poly naive_mul(const Poly& a, const Poly& b) {
  Poly out(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Poly::Expvec e(a.nvars());
      for (std::size_t i = 0; i < a.nvars(); ++i) e[i] = ea[i] + eb[i];
      Poly t(a.nvars());
      t.add_term(e, ca * cb);
      out = out + t;
    }
  }
  return out;
}

Poly random_poly(std::mt19937& rng, std::size_t nvars, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  Poly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Poly::Expvec e(nvars);
    for (auto& v : e) v = static_cast<unsigned>(deg(rng));
    p.add_term(e, rat(num(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("cubic difference expands to the certified form") {
  // (x1+x2)^3 - x1 (x1 + 3/2 x2)^2 = 3/4 x1 x2^2 + x2^3
  const std::size_t n = 2;
  Poly lhs = (x(n, 0) + x(n, 1)).pow(3) -
             x(n, 0) * (x(n, 0) + x(n, 1) * rat(3, 2)).pow(2);
  Poly expected(n);
  expected.add_term({1, 2}, rat(3, 4));
  expected.add_term({0, 3}, rat(1));
  CHECK(lhs == expected);
}

TEST_CASE("multiplicative identity") {
  std::mt19937 rng(7);
  Poly p = random_poly(rng, 3, 4, 12);
  CHECK(p * Poly::constant(3, Rat(1)) == p);
}

TEST_CASE("random products agree with the nested-loop oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Poly a = random_poly(rng, 2, 4, 8);
    Poly b = random_poly(rng, 2, 4, 8);
    CHECK(a * b == naive_mul(a, b));
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Poly a = random_poly(rng, 3, 3, 6);
    Poly b = random_poly(rng, 3, 3, 6);
    Poly c = random_poly(rng, 3, 3, 6);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("substitution matches evaluation at shifted points") {
  std::mt19937 rng(17);
  Poly p = random_poly(rng, 3, 4, 10);
  Poly shifted = p.substitute(0, Poly::variable(3, 0) + Poly::variable(3, 2));
  std::uniform_int_distribution<long> v(1, 7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> pt = {Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
    std::vector<Rat> moved = {pt[0] + pt[2], pt[1], pt[2]};
    CHECK(shifted.evaluate(pt) == p.evaluate(moved));
  }
}

TEST_CASE("homogeneous degree bookkeeping") {
  const std::size_t n = 2;
  Poly h = (x(n, 0) + x(n, 1)).pow(5);
  CHECK(h.homogeneous_degree() == 5);
  Poly nh = x(n, 0).pow(2) + x(n, 1);
  CHECK(nh.homogeneous_degree() == -1);
  CHECK(Poly(n).homogeneous_degree() == -1);
  CHECK(Poly(n).is_zero());
}

TEST_CASE("term limit guards expansion blowup") {
  std::size_t saved = Poly::term_limit;
  Poly::term_limit = 10;
  Poly p = (x(3, 0) + x(3, 1) + x(3, 2)).pow(2);  // 6 terms, fine
  CHECK(p.term_count() == 6);
  CHECK_THROWS_AS((void)p.pow(4), Error);
  Poly::term_limit = saved;
}

TEST_CASE("integerization finds the primitive scale") {
  const std::size_t n = 2;
  Poly p = x(n, 0) * rat(3, 4) + x(n, 1) * rat(5, 6);
  Int scale;
  Poly q = p.integerized(&scale);
  CHECK(scale == 12);
  CHECK(q.coeff({1, 0}) == 9);
  CHECK(q.coeff({0, 1}) == 10);
}

TEST_CASE("clear_powers: trivial equality") {
  MonomialExpr lhs(2), rhs(2);
  LinearForm f{{Rat(1), Rat(0)}};
  lhs.mul_form(f, Rat(1));
  rhs.mul_form(f, Rat(1));
  auto cleared = clear_powers(lhs, rhs);
  CHECK(cleared.power == 1);
  CHECK(cleared.lhs == cleared.rhs);
  CHECK(cleared.difference().is_zero());
}

TEST_CASE("clear_powers: geometric vs arithmetic mean") {
  // sqrt(x1 x2) <= (x1 + x2)/2 clears with N = 2 into (x1 - x2)^2 / 4 >= 0
  MonomialExpr lhs(2), rhs(2);
  lhs.mul_form(LinearForm{{Rat(1), Rat(0)}}, rat(1, 2));
  lhs.mul_form(LinearForm{{Rat(0), Rat(1)}}, rat(1, 2));
  rhs.mul_constant(rat(1, 2), Rat(1));
  rhs.mul_form(LinearForm{{Rat(1), Rat(1)}}, Rat(1));
  auto cleared = clear_powers(lhs, rhs);
  CHECK(cleared.power == 2);
  Poly diff = cleared.difference();
  Poly expected(2);
  expected.add_term({2, 0}, rat(1, 4));
  expected.add_term({1, 1}, rat(-1, 2));
  expected.add_term({0, 2}, rat(1, 4));
  CHECK(diff == expected);
  // soundness on random positive rational points
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> num(1, 40), den(1, 7);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Rat> pt = {rat(num(rng), den(rng)), rat(num(rng), den(rng))};
    Rat exact_diff = cleared.rhs.evaluate(pt) - cleared.lhs.evaluate(pt);
    std::vector<double> ptd = {to_double(pt[0]), to_double(pt[1])};
    double approx = rhs.evaluate(ptd) - lhs.evaluate(ptd);
    if (exact_diff > 0) CHECK(approx > -1e-12);
    if (exact_diff < 0) CHECK(approx < 1e-12);
    if (exact_diff == 0) CHECK(std::abs(approx) < 1e-9);
  }
}

TEST_CASE("clear_powers rejects non-scale-invariant comparisons") {
  MonomialExpr lhs(2), rhs(2);
  lhs.mul_form(LinearForm{{Rat(1), Rat(0)}}, Rat(2));
  rhs.mul_form(LinearForm{{Rat(1), Rat(1)}}, Rat(1));
  CHECK_THROWS_AS((void)clear_powers(lhs, rhs), Error);
}

TEST_CASE("nonneg_certificate is one-sided") {
  const std::size_t n = 2;
  Poly square = (x(n, 0) - x(n, 1)).pow(2);
  CHECK(nonneg_certificate(square) == CertOutcome::inconclusive);  // has -2 x1 x2
  CHECK(nonneg_certificate(Poly(n)) == CertOutcome::certified);    // zero polynomial
  Poly pos = x(n, 0) * rat(3, 4) + x(n, 1).pow(3);
  CHECK(nonneg_certificate(pos) == CertOutcome::certified);
}

TEST_CASE("nonneg_certificate is sound on sampled nonnegative points") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<long> num(0, 20), den(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    Poly p = random_poly(rng, 3, 4, 10);
    // flip every stored coefficient nonnegative to manufacture a certified poly
    Poly q(3);
    for (const auto& [e, c] : p.terms()) q.add_term(e, abs(c));
    REQUIRE(nonneg_certificate(q) == CertOutcome::certified);
    for (int pt = 0; pt < 20; ++pt) {
      std::vector<Rat> xs = {rat(num(rng), den(rng)), rat(num(rng), den(rng)), rat(num(rng), den(rng))};
      CHECK(q.evaluate(xs) >= 0);
    }
  }
}
