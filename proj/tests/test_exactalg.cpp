#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgcy/laurent.hpp"
#include "lgcy/sector_value.hpp"
#include "lgcy/series1d.hpp"

#include <random>

using namespace lgcy;

namespace {

Cyclotomic xi(unsigned n, long k) { return Cyclotomic::xiPow(n, k); }

Cyclotomic randomCyclo(std::mt19937& rng, unsigned order) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<Rational> p;
  for (unsigned i = 0; i < order; ++i) p.push_back(makeRational(num(rng), den(rng)));
  return Cyclotomic::fromPowers(order, p);
}

SectorValue randomValue(std::mt19937& rng, const Trunc& t, bool withConstant = true) {
  SectorValue v(t);
  std::uniform_int_distribution<int> lam(0, t.lambdaMax), h(0, t.hBound - 1), count(1, 6);
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m{lam(rng), h(rng), 0, {}};
    if (!withConstant && m.lam == 0 && m.h == 0) m.lam = 1;
    v.addTerm(m, randomCyclo(rng, t.order));
  }
  return v;
}

}  // namespace

TEST_CASE("cyclotomic polynomials match known integer coefficients") {
  // Independent oracle: tabulated values of Phi_n.
  CHECK(cyclotomicPolynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomicPolynomial(3) == std::vector<long>{1, 1, 1});
  CHECK(cyclotomicPolynomial(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomicPolynomial(5) == std::vector<long>{1, 1, 1, 1, 1});
  CHECK(cyclotomicPolynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomicPolynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(eulerPhi(12) == 4);
  CHECK(eulerPhi(5) == 4);
}

TEST_CASE("cycloMul examples") {
  CHECK(cycloMul(xi(5, 2), xi(5, 4)) == xi(5, 1));
  CHECK(cycloMul(xi(5, 1), Cyclotomic(5, 1)) == xi(5, 1));
  Cyclotomic one(3, 1);
  CHECK(cycloMul(one + xi(3, 1), one + xi(3, 2)) == one);
  CHECK_THROWS_AS(cycloMul(xi(5, 1), xi(3, 1)), std::invalid_argument);
  CHECK(xi(5, 5) == Cyclotomic(5, 1));
  CHECK(xi(5, -1) == xi(5, 4));
}

TEST_CASE("cyclotomic canonical form and field axioms on random elements") {
  std::mt19937 rng(11);
  for (unsigned order : {3u, 4u, 5u, 6u, 8u, 12u}) {
    for (int trial = 0; trial < 30; ++trial) {
      Cyclotomic a = randomCyclo(rng, order), b = randomCyclo(rng, order), c = randomCyclo(rng, order);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      // representation independence: a + Phi_n(xi) * x^k reduces to a
      std::vector<Rational> raw(a.coeffs().begin(), a.coeffs().end());
      const auto& phi = cyclotomicPolynomial(order);
      raw.resize(phi.size() + 2, Rational(0));
      for (size_t i = 0; i < phi.size(); ++i) raw[i + 2] += Rational(phi[i]) * Rational(3);
      CHECK(Cyclotomic::fromPowers(order, raw) == a);
      if (!a.isZero()) CHECK(a * a.inverse() == Cyclotomic(order, 1));
    }
  }
}

TEST_CASE("cyclotomic string form") {
  CHECK(xi(5, 2).toString() == "xi^2");
  CHECK((Cyclotomic(5, makeRational(1, 2)) - xi(5, 1) * Rational(3)).toString() == "1/2 - 3*xi");
  CHECK(Cyclotomic(5).toString() == "0");
}

TEST_CASE("seriesExp examples") {
  Trunc t{1, 2, 2};
  CHECK(seriesExp(SectorValue(t)) == SectorValue::constant(t, Rational(1)));
  SectorValue x = SectorValue::lambda(t) + SectorValue::hyperplane(t);
  SectorValue expected = SectorValue::constant(t, Rational(1)) + x;
  expected.addTerm(Monomial{2, 0, 0, {}}, Cyclotomic(1, makeRational(1, 2)));
  expected.addTerm(Monomial{1, 1, 0, {}}, Cyclotomic(1, 1));
  expected.addTerm(Monomial{2, 1, 0, {}}, Cyclotomic(1, makeRational(1, 2)));
  CHECK(seriesExp(x) == expected);
  // d (lambda + H) against exp(lambda + H)^d
  Trunc t5{5, 4, 5};
  SectorValue y = SectorValue::lambda(t5) + SectorValue::hyperplane(t5);
  CHECK(seriesExp(y.scaled(Rational(5))) == seriesPow(seriesExp(y), 5));
  CHECK_THROWS(seriesExp(SectorValue::constant(t, Rational(1))));
}

TEST_CASE("seriesInvert examples") {
  Trunc t{1, 3, 1};
  SectorValue x = SectorValue::constant(t, Rational(1)) - SectorValue::lambda(t);
  SectorValue expected(t);
  for (int k = 0; k <= 3; ++k) expected.addTerm(Monomial{k, 0, 0, {}}, Cyclotomic(1, 1));
  CHECK(seriesInvert(x) == expected);

  Trunc t5{5, 0, 1};
  CHECK(seriesInvert(SectorValue::constant(t5, xi(5, 1))) == SectorValue::constant(t5, xi(5, 4)));

  Trunc t1{5, 1, 1};
  SectorValue l = SectorValue::lambda(t1);
  SectorValue one = SectorValue::constant(t1, Rational(1));
  SectorValue arg = seriesExp(l).scaled(xi(5, 1)) - one;
  Cyclotomic u = (xi(5, 1) - Cyclotomic(5, 1)).inverse();
  SectorValue want = (one - l.scaled(xi(5, 1) * u)).scaled(u);
  CHECK(seriesInvert(arg) == want);
  CHECK((seriesInvert(arg) * arg) == one);

  CHECK_THROWS_AS(seriesInvert(SectorValue::lambda(t)), NonUnitError);
}

TEST_CASE("ring axioms, exp homomorphism and double inversion on random values") {
  std::mt19937 rng(7);
  for (unsigned order : {1u, 3u, 5u}) {
    Trunc t{order, 3, 3};
    for (int trial = 0; trial < 25; ++trial) {
      SectorValue a = randomValue(rng, t), b = randomValue(rng, t), c = randomValue(rng, t);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      SectorValue na = randomValue(rng, t, false), nb = randomValue(rng, t, false);
      CHECK(seriesExp(na) * seriesExp(nb) == seriesExp(na + nb));
      SectorValue unit = na + SectorValue::constant(t, randomCyclo(rng, order) + Cyclotomic(order, 7));
      if (!unit.constantTerm().isZero()) {
        CHECK(seriesInvert(seriesInvert(unit)) == unit);
        CHECK(seriesInvert(unit) * unit == SectorValue::constant(t, Rational(1)));
      }
    }
  }
}

TEST_CASE("division by lambda + H") {
  std::mt19937 rng(3);
  Trunc t{5, 6, 4};
  SectorValue lh = SectorValue::lambda(t) + SectorValue::hyperplane(t);
  for (int trial = 0; trial < 20; ++trial) {
    SectorValue q = randomValue(rng, t);
    auto back = divideByLambdaPlusH(q * lh);
    REQUIRE(back.has_value());
    Trunc tq = t;
    tq.lambdaMax = t.lambdaMax - t.hBound;
    CHECK(*back == q.retruncated(tq));
  }
  CHECK_FALSE(divideByLambdaPlusH(SectorValue::lambda(t)).has_value());
  // lambda^N / (lambda + H) = sum_i lambda^(N-1-i) (-H)^i
  SectorValue l4 = seriesPow(SectorValue::lambda(t), 4);
  auto q = divideByLambdaPlusH(l4);
  REQUIRE(q.has_value());
  CHECK(q->atLambdaZero() == seriesPow(SectorValue::hyperplane(t), 3).scaled(Rational(-1)).retruncated(q->trunc()));
}

TEST_CASE("negative lambda powers are rejected") {
  SectorValue v(Trunc{1, 3, 1});
  CHECK_THROWS_AS(v.addTerm(Monomial{-1, 0, 0, {}}, Cyclotomic(1, 1)), std::domain_error);
}

TEST_CASE("gammaRatioRewrite examples and telescoping") {
  Trunc t{1, 6, 1};
  SectorValue one = SectorValue::constant(t, Rational(1));
  CHECK(gammaRatioRewrite(1, 0, 0, t) == ZLaurentSeries::constant(one));
  CHECK(gammaRatioRewrite(1, 0, 1, t) == ZLaurentSeries::constant(-SectorValue::lambda(t)));
  ZLaurentSeries f = ZLaurentSeries::constant(-SectorValue::lambda(t));
  f.add(1, SectorValue::constant(t, makeRational(-2, 5)));
  CHECK(gammaRatioRewrite(1, makeRational(2, 5), 1, t) == f);
  for (int w = 1; w <= 3; ++w)
    for (int m = 0; m <= 3; ++m)
      for (int n = 0; n <= 3; ++n) {
        Rational b = makeRational(w, 7);
        CHECK(gammaRatioRewrite(w, b, m + n, t) ==
              gammaRatioRewrite(w, b, m, t) * gammaRatioRewrite(w, b + m, n, t));
      }
}

TEST_CASE("Bernoulli polynomials against the generating function") {
  // Oracle: z e^{zx} / (e^z - 1) = sum B_n(x) z^n / n!, expanded by series division.
  const unsigned n = 9;
  for (Rational x : {Rational(0), makeRational(1, 5), makeRational(1, 2), makeRational(2, 3)}) {
    RSeries ezx(n + 1), em1(n + 2);
    for (unsigned k = 0; k <= n; ++k) ezx[k] = [&]() -> Rational {
      Rational p = 1;
      for (unsigned i = 0; i < k; ++i) p *= x;
      return p / factorial(k);
    }();
    // (e^z - 1)/z
    for (unsigned k = 0; k <= n; ++k) em1[k] = 1 / factorial(k + 1);
    em1.resize(n + 1);
    RSeries gen = rseriesMul(ezx, rseriesInv(em1));
    for (unsigned k = 0; k <= n; ++k) CHECK(bernoulliPoly(k, x) == gen[k] * factorial(k));
  }
  CHECK(bernoulliPoly(1, makeRational(1, 2)) == 0);
  CHECK(bernoulliPoly(2, makeRational(1, 5)) == makeRational(1, 25) - makeRational(1, 5) + makeRational(1, 6));
}

TEST_CASE("univariate exp and inverse") {
  RSeries a{0, 1, 0, 0, 0};
  RSeries e = rseriesExp(a);
  for (unsigned k = 0; k < 5; ++k) CHECK(e[k] == 1 / factorial(k));
  RSeries b{2, 3, 0, 1};
  RSeries bi = rseriesInv(b);
  RSeries p = rseriesMul(b, bi);
  CHECK(p[0] == 1);
  for (size_t k = 1; k < p.size(); ++k) CHECK(p[k] == 0);
}
