#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgcy/genfun.hpp"

#include <numeric>
#include <random>

using namespace lgcy;

namespace {

LGPair shipped(const std::string& f) { return loadPair(shippedPairPath(f)); }

std::vector<LGPair> allPairs() {
  return {shipped("quintic.json"), shipped("cubic.json"), shipped("k3.json"), shipped("weighted6.json")};
}

SectorValue constant(const SectorValue& like, const Rational& r) { return SectorValue::constant(like.trunc(), r); }

// (n-3)! / prod a_i! when sum a_i = n - 3.
Rational psiClosedForm(const std::vector<int>& a) {
  int n = static_cast<int>(a.size());
  if (std::accumulate(a.begin(), a.end(), 0) != n - 3) return 0;
  Rational r = factorial(static_cast<unsigned>(n - 3));
  for (int x : a) r /= factorial(static_cast<unsigned>(x));
  return r;
}

}  // namespace

TEST_CASE("untwistedJ examples") {
  LGPair q = shipped("quintic.json");
  const auto& G = q.group();
  int j = G.grading(), j2 = G.gradingPow(2), j3 = G.gradingPow(3);
  CohSeries one = untwistedJ(q, 0, Orders::make(4, 0), {j});
  SectorValue c3 = one.coeff(SeriesKey{j3, {3}, -2});
  CHECK(c3 == constant(c3, makeRational(1, 6)));
  SectorValue c0 = one.coeff(SeriesKey{G.identity(), {0}, 1});
  CHECK(c0 == constant(c0, Rational(1)));
  CohSeries two = untwistedJ(q, 0, Orders::make(4, 0), {j, j2});
  SectorValue c11 = two.coeff(SeriesKey{j3, {1, 1}, -1});
  CHECK(c11 == constant(c11, Rational(1)));
  for (int c = 0; c <= q.maxTwist(); ++c) {
    CohSeries jc = untwistedJ(q, c, Orders::make(2, 0));
    CHECK(jc.twist() == c);
    SectorValue lead = jc.coeff(SeriesKey{G.identity(), std::vector<int>(G.size(), 0), 1});
    CHECK(lead == constant(lead, Rational(1)));
  }
}

TEST_CASE("untwistedJ satisfies the string equation") {
  for (const LGPair& p : allPairs()) {
    Orders o = Orders::make(5, 0);
    CohSeries j = untwistedJ(p, 0, o);
    CohSeries d = tDerivative(j, p.group().identity(), PrefactorMode::Strip);
    CHECK(d.windowed(o.zMin, o.zMax, o.T - 1).terms() == j.windowed(o.zMin, o.zMax, o.T - 1).terms());
  }
}

TEST_CASE("psi integral oracle examples") {
  CHECK(psiIntegralOracle({0, 0, 0}) == 1);
  CHECK(psiIntegralOracle({1, 0, 0, 0}) == 1);
  CHECK(psiIntegralOracle({2, 0, 0, 0}) == 0);
  CHECK_THROWS(psiIntegralOracle({0, 0}));
}

TEST_CASE("psi integral oracle agrees with the multinomial closed form") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);
    std::vector<int> a(n, 0);
    int budget = n - 3 + static_cast<int>(rng() % 2);
    for (int i = 0; i < budget; ++i) ++a[rng() % n];
    CHECK(psiIntegralOracle(a) == psiClosedForm(a));
  }
}

TEST_CASE("oracle J matches the closed form") {
  for (const LGPair& p : allPairs()) {
    Orders o = Orders::make(4, 0);
    for (int c = 0; c <= p.maxTwist(); ++c) CHECK(oracleJ(p, c, o).terms() == untwistedJ(p, c, o).terms());
  }
}

TEST_CASE("iFunctionX examples") {
  LGPair q = shipped("quintic.json");
  const auto& G = q.group();
  CohSeries ix = iFunctionX(q, Orders::make(7, 5));
  REQUIRE(ix.prefactor().size() == 1);
  CHECK(ix.prefactor()[0] == PrefactorToken{"t", 5, 0, 0, -1});
  SectorValue lead = ix.coeff(SeriesKey{G.identity(), {0, 0}, 1});
  CHECK(lead == constant(lead, Rational(1)));
  SectorValue k2 = ix.coeff(SeriesKey{G.gradingPow(2), {2, 0}, -1});
  CHECK(k2 == constant(k2, makeRational(1, 2)));
  // (-lambda - 2z/5)^5 t^7 / (z^6 7!) on 1_{j^2}
  for (int i = 0; i <= 5; ++i) {
    SectorValue v = ix.coeff(SeriesKey{G.gradingPow(2), {7, 0}, -6 + i});
    SectorValue want(v.trunc());
    Rational c = Rational(binomial(5, i)) / factorial(7);
    for (int k = 0; k < i; ++k) c *= makeRational(-2, 5);
    if ((5 - i) % 2) c = -c;
    want.addTerm(Monomial{5 - i, 0, 0, {}}, Cyclotomic(5, c));
    CHECK(v == want);
  }
}

TEST_CASE("iFunctionX lambda divisibility") {
  for (const LGPair& p : allPairs()) {
    int maxN = 0;
    for (int g = 0; g < p.group().size(); ++g) maxN = std::max(maxN, p.fixedDim(g));
    CohSeries d = tDerivative(iFunctionX(p, Orders::make(7, maxN + 1)), 0, PrefactorMode::Strip);
    CHECK_FALSE(lambdaDivisibilityWitness(p, d).has_value());
  }
}

TEST_CASE("retained prefactor derivative is lambda divisible") {
  LGPair q = shipped("quintic.json");
  CohSeries ix = iFunctionX(q, Orders::make(6, 6));
  CohSeries keep = tDerivative(ix, 0, PrefactorMode::Retain), strip = tDerivative(ix, 0, PrefactorMode::Strip);
  CHECK(keep.prefactor().size() == 1);
  CHECK(strip.prefactor().empty());
  SectorValue extra = keep.coeff(SeriesKey{0, {-1, 0}, 1});
  CHECK(extra == SectorValue::lambda(extra.trunc()).scaled(Rational(5)));
  CohSeries keptLimit = lambdaLimit(keep);
  CohSeries nonneg = keptLimit.emptyLike();
  for (auto& [k, v] : keptLimit.terms())
    if (k.tdeg[0] >= 0) nonneg.add(k, v);
  CHECK(nonneg.terms() == lambdaLimit(strip).terms());
}

TEST_CASE("iFunctionY leading term and support") {
  for (const LGPair& p : allPairs()) {
    CohSeries iy = iFunctionY(p, Orders::make(6, 3));
    REQUIRE(iy.prefactor().size() == 1);
    CHECK(iy.prefactor()[0] == PrefactorToken{"q", 0, 1, 0, -1});
    SectorValue lead = iy.coeff(SeriesKey{p.group().identity(), std::vector<int>(iy.variables().size(), 0), 1});
    CHECK(lead == constant(lead, Rational(1)));
    for (auto& [k, v] : iy.terms()) {
      CHECK(p.fixedDim(k.sector) > 0);
      CHECK(v.trunc().hBound == p.fixedDim(k.sector));
    }
  }
}

TEST_CASE("empty-range conventions agree on the hypersurface pairs") {
  for (std::string f : {"quintic.json", "cubic.json"}) {
    LGPair p = shipped(f);
    std::vector<SeriesKey> flagged;
    CohSeries a = iFunctionY(p, Orders::make(8, 3), EmptyRangeConvention::GammaConsistent, &flagged);
    CohSeries b = iFunctionY(p, Orders::make(8, 3), EmptyRangeConvention::EmptyProduct);
    CHECK(flagged.empty());
    CHECK(a.terms() == b.terms());
  }
  LGPair k3 = shipped("k3.json");
  std::vector<SeriesKey> flagged;
  CohSeries a = iFunctionY(k3, Orders::make(8, 3), EmptyRangeConvention::GammaConsistent, &flagged);
  CohSeries b = iFunctionY(k3, Orders::make(8, 3), EmptyRangeConvention::EmptyProduct);
  REQUIRE_FALSE(flagged.empty());
  CHECK(a.coeff(flagged.front()) != b.coeff(flagged.front()));
}

TEST_CASE("H-function examples") {
  LGPair q = shipped("quintic.json");
  const auto& G = q.group();
  CohSeries hx = hFunctionX(q, Orders::make(7, 3));
  CHECK(hx.prefactor()[0] == PrefactorToken{"t", 5, 0, -1, 0});
  SectorValue unit = hx.coeff(SeriesKey{G.identity(), {0, 0}, 0});
  SectorValue one = constant(unit, Rational(1));
  CHECK(unit == one.timesAtom(GammaAtom{1, 0}, -5));
  SectorValue k7 = hx.coeff(SeriesKey{G.gradingPow(2), {7, 0}, 0});
  CHECK(k7 == constant(k7, Rational(1) / factorial(7)).timesAtom(GammaAtom{1, makeRational(7, 5)}, -5));
  for (const LGPair& p : allPairs()) {
    CohSeries h = hFunctionX(p, Orders::make(6, 2));
    auto ns = p.noncompactSectors();
    for (auto& [k, v] : h.terms()) {
      Rational z = 0;
      for (size_t s = 0; s < ns.size(); ++s) z += (p.age(ns[s]) - 1) * k.tdeg[s + 1];
      CHECK(Rational(k.z) == z);
    }
  }
}

TEST_CASE("H factorization reconstructs both I-functions") {
  for (const LGPair& p : allPairs()) {
    Orders o = Orders::make(6, 2);
    CHECK_NOTHROW(hFactorization(p, iFunctionX(p, o), Side::X));
    CHECK_NOTHROW(hFactorization(p, iFunctionY(p, o), Side::Y));
  }
  LGPair q = shipped("quintic.json");
  CohSeries ix = iFunctionX(q, Orders::make(6, 2)).windowed();
  SeriesKey k{q.group().gradingPow(3), {3, 0}, -2};
  ix.add(k, SectorValue::constant(ix.truncFor(k.sector), Rational(1)));
  try {
    hFactorization(q, ix, Side::X);
    FAIL("corrupted series reconstructed");
  } catch (const IdentityFailure& e) {
    CHECK(e.key == k);
  }
}

TEST_CASE("continued H degenerate block and constant terms") {
  LGPair q = shipped("quintic.json");
  CohSeries h = hContinued(q, Orders::make(4, 3));
  CHECK(h.prefactor()[0] == PrefactorToken{"t", 5, 0, -1, 0});
  // m = 0, k = 0: the b-blocks land on 1~_{j^-b}; only b = 0 has a constant term
  for (auto& [k, v] : h.terms()) {
    if (totalDegree(k.tdeg) != 0) continue;
    CHECK(k.sector == q.group().identity());
  }
}

TEST_CASE("residue examples") {
  for (int d : {3, 4, 5, 6})
    for (int b = 0; b < d; ++b) {
      CHECK(gammaResidue(0, b, d) == makeRational(1, d));
      CHECK(gammaResidue(1, b, d) == makeRational(-1, d));
      for (int m = 0; m <= 6; ++m) CHECK(residueUnitCheck(m, b, d));
    }
  CHECK(gammaResidue(3, 2, 5) == makeRational(-1, 30));
}

TEST_CASE("FJRW I-function leading term and narrow support") {
  for (const LGPair& p : allPairs()) {
    int maxN = 0;
    for (int g = 0; g < p.group().size(); ++g) maxN = std::max(maxN, p.fixedDim(g));
    CohSeries f = fjrwIFunction(p, Orders::make(6, maxN + 1));
    SectorValue lead = f.coeff(SeriesKey{p.group().identity(), std::vector<int>(f.variables().size(), 0), 1});
    CHECK(lead == constant(lead, Rational(-1)));
    for (auto& [k, v] : f.terms()) CHECK(p.isNarrow(k.sector));
  }
  LGPair q = shipped("quintic.json");
  CohSeries f = fjrwIFunction(q, Orders::make(4, 6));
  for (int g = 0; g < q.group().size(); ++g)
    if (!q.isNarrow(g)) CHECK(f.coeff(SeriesKey{g, {1, 0}, 0}).isZero());
  CHECK_THROWS(fjrwIFunction(shipped("quintic.json"), Orders::make(4, 2)));
}

TEST_CASE("series serialization round trip") {
  LGPair q = shipped("quintic.json");
  CohSeries hx = hFunctionX(q, Orders::make(6, 2));
  CohSeries back = CohSeries::fromJson(hx.toJson());
  CHECK(back == hx);
}

TEST_CASE("only the Gamma-consistent reading factorizes I^Y") {
  for (std::string f : {"k3.json", "weighted6.json"}) {
    LGPair p = shipped(f);
    Orders o = Orders::make(8, 3);
    CHECK_NOTHROW(hFactorization(p, iFunctionY(p, o, EmptyRangeConvention::GammaConsistent), Side::Y));
    CHECK_THROWS_AS(hFactorization(p, iFunctionY(p, o, EmptyRangeConvention::EmptyProduct), Side::Y), IdentityFailure);
  }
}
