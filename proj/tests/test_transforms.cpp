#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgcy/genfun.hpp"
#include "lgcy/transforms.hpp"

#include <random>
#include <set>

using namespace lgcy;

namespace {

LGPair shipped(const std::string& f) { return loadPair(shippedPairPath(f)); }

std::vector<LGPair> allPairs() {
  return {shipped("quintic.json"), shipped("cubic.json"), shipped("k3.json"), shipped("weighted6.json")};
}

const BlockEntry& onlyEntry(const Transform& t, int in) {
  REQUIRE(t.entries(in).size() == 1);
  return t.entries(in).front();
}

// Series on `side` with one term `v` at (sector, t^0, z^zExp).
CohSeries single(const LGPair& p, Side side, int sector, const SectorValue& v, int zExp = 0, Orders o = Orders::make(4, 4)) {
  CohSeries s(side, p.degree(), hBoundsFor(p, side), xVariables(p), o);
  s.add(SeriesKey{sector, std::vector<int>(s.variables().size(), 0), zExp}, v);
  return s;
}

// Random plain series with small rational lambda-polynomial coefficients.
CohSeries randomSeries(const LGPair& p, Side side, std::mt19937& rng, int lambdaOrder) {
  Orders o = Orders::make(3, lambdaOrder);
  CohSeries s(side, p.degree(), hBoundsFor(p, side), xVariables(p), o);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), sec(0, p.group().size() - 1), deg(0, 2), zd(-3, 1);
  for (int i = 0; i < 12; ++i) {
    int g = sec(rng);
    if (s.truncFor(g).hBound == 0) continue;
    Trunc t = s.truncFor(g);
    SectorValue v(t);
    for (int k = 0; k <= 2; ++k) v.addTerm(Monomial{k, 0, 0, {}}, Cyclotomic(t.order, makeRational(num(rng), den(rng))));
    std::vector<int> td(s.variables().size(), 0);
    td[0] = deg(rng);
    s.add(SeriesKey{g, td, zd(rng)}, v);
  }
  return s;
}

SectorValue geometricSum(int d, const Trunc& t) {
  SectorValue x = SectorValue::lambda(t) + SectorValue::hyperplane(t);
  SectorValue sum(t);
  for (int a = 0; a < d; ++a) sum += seriesExp(x.scaled(Rational(a)));
  return sum.scaled(makeRational(1, d));
}

}  // namespace

TEST_CASE("iC examples") {
  LGPair q = shipped("quintic.json");
  const auto& G = q.group();
  Transform i1 = iC(q, 1), i0 = iC(q, 0);
  const BlockEntry& e = onlyEntry(i1, G.grading());
  CHECK(e.out == G.identity());
  CHECK(e.entry.coeff(0).constantTerm() == Cyclotomic(5, Rational(1)));
  for (int g = 0; g < G.size(); ++g) CHECK(onlyEntry(i0, g).out == g);
  CHECK_THROWS(iC(q, 5));
}

TEST_CASE("iC inverse composes to the identity") {
  for (const LGPair& p : allPairs())
    for (int c = 0; c <= p.maxTwist(); ++c) {
      CohSeries j = untwistedJ(p, 0, Orders::make(3, 0));
      CohSeries back = iCInverse(p, c).apply(iC(p, c).apply(j));
      CHECK(back.terms() == j.terms());
    }
}

TEST_CASE("iC preserves the pairing") {
  for (const LGPair& p : allPairs()) {
    const auto& G = p.group();
    for (int c = 0; c <= p.maxTwist(); ++c)
      for (int g1 = 0; g1 < G.size(); ++g1)
        for (int g2 = 0; g2 < G.size(); ++g2) {
          int h1 = G.mul(g1, G.gradingPow(-c)), h2 = G.mul(g2, G.gradingPow(-c));
          CHECK(p.pairTwisted(0, g1, g2, Specialization::Untwisted) ==
                p.pairTwisted(c, h1, h2, Specialization::Untwisted));
        }
  }
}

TEST_CASE("deltaC examples") {
  LGPair q = shipped("quintic.json");
  const int K = 3;
  TwistEntry zero = deltaCEntry(q, 0, 0, K);
  std::vector<std::vector<Rational>> s(q.n(), std::vector<Rational>(K, 0));
  RSeries id = evaluateTwistEntry(zero, s, 4);
  CHECK(id == RSeries{1, 0, 0, 0, 0});

  LGPair k3 = shipped("k3.json");
  int j2 = k3.group().gradingPow(2);
  for (int j = 0; j < k3.n(); ++j) CHECK(k3.multiplicity(j2, j) == makeRational(1, 2));
  TwistEntry half = deltaCEntry(k3, 0, j2, K);
  for (auto& x : half.s0Exponent) CHECK(x == 0);

  for (int j = 0; j < q.n(); ++j) CHECK(twistedMultiplicity(q, 1, 0, j) == makeRational(1, 5));
  TwistEntry e = deltaCEntry(q, 1, 0, K);
  Rational z1 = 0;
  for (int j = 0; j < q.n(); ++j) z1 += e.logCoeff[j][0];
  CHECK(z1 == makeRational(1, 60));
  for (auto& row : s) row[0] = 1;
  CHECK(evaluateTwistEntry(e, s, 1)[1] == makeRational(1, 60));
}

TEST_CASE("deltaC is multiplicative in s") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  const int K = 4, Z = 6;
  for (const LGPair& p : allPairs())
    for (int c = 0; c <= p.maxTwist(); ++c)
      for (int g = 0; g < p.group().size(); ++g) {
        TwistEntry e = deltaCEntry(p, c, g, K);
        std::vector<std::vector<Rational>> s(p.n(), std::vector<Rational>(K)), t = s, st = s;
        for (int j = 0; j < p.n(); ++j)
          for (int k = 0; k < K; ++k) {
            s[j][k] = makeRational(num(rng), den(rng));
            t[j][k] = makeRational(num(rng), den(rng));
            st[j][k] = s[j][k] + t[j][k];
          }
        CHECK(evaluateTwistEntry(e, st, Z) == rseriesMul(evaluateTwistEntry(e, s, Z), evaluateTwistEntry(e, t, Z)));
      }
}

TEST_CASE("deltaC conjugation identity on every sector") {
  for (const LGPair& p : allPairs())
    for (int c = 0; c <= p.maxTwist(); ++c) {
      DiagonalTwist lhs = conjugateByIC(p, c, deltaC(p, 0, 4));
      DiagonalTwist rhs = deltaC(p, c, 4);
      for (int g = 0; g < p.group().size(); ++g) CHECK(lhs.entries[g] == rhs.entries[g]);
    }
}

TEST_CASE("deltaC specialization signs differ only in the s0 part") {
  LGPair q = shipped("quintic.json");
  for (int g = 0; g < q.group().size(); ++g) {
    TwistEntry e = deltaCEntry(q, 1, g, 4);
    SpecializedTwistEntry a = specializeTwistEntry(q, e, Specialization::EulerInverse, 4);
    SpecializedTwistEntry b = specializeTwistEntry(q, e, Specialization::EulerInverseSigned, 4);
    CHECK(a.w == b.w);
    REQUIRE(a.lambdaPowers.size() == b.lambdaPowers.size());
    for (size_t i = 0; i < a.lambdaPowers.size(); ++i) {
      CHECK(a.lambdaPowers[i].first == -b.lambdaPowers[i].first);
      CHECK(a.lambdaPowers[i].second == b.lambdaPowers[i].second);
    }
  }
}

TEST_CASE("deltaCirc examples") {
  LGPair q = shipped("quintic.json");
  const auto& G = q.group();
  Transform t = deltaCirc(q);
  const BlockEntry& j3 = onlyEntry(t, G.gradingPow(3));
  CHECK(j3.out == G.gradingPow(2));
  CHECK(j3.entry.coeff(0).constantTerm().rationalPart() == -1);
  const BlockEntry& j1 = onlyEntry(t, G.grading());
  CHECK(j1.out == G.identity());
  CHECK(j1.entry.coeff(0).constantTerm().rationalPart() == -1);
  // the image of 1_e is broad
  CHECK(t.entries(G.identity()).empty());
  CHECK(!q.isNarrow(G.gradingPow(4)));
}

TEST_CASE("deltaCirc is a signed bijection onto the narrow sectors") {
  for (const LGPair& p : allPairs()) {
    Transform t = deltaCirc(p);
    std::set<int> outs;
    for (int g = 0; g < p.group().size(); ++g)
      for (auto& b : t.entries(g)) {
        Cyclotomic c = b.entry.coeff(0).constantTerm();
        CHECK(c * c == Cyclotomic(c.order(), Rational(1)));
        CHECK(p.isNarrow(b.out));
        CHECK(outs.insert(b.out).second);
      }
    CHECK(outs.size() == p.narrowSectors().size());
  }
}

TEST_CASE("deltaCirc sign conventions differ by (-1)^age(j) away from wrapping sectors") {
  // With multiplicities reduced into [0, 1), sum_j m_j(g j) = age(g) + age(j) unless some m_j(g) + c_j/d >= 1.
  for (const LGPair& p : allPairs()) {
    const auto& G = p.group();
    Transform a = deltaCirc(p, CircSign::SectorAge), b = deltaCirc(p, CircSign::ShiftedAge);
    long global = p.age(G.grading()).get_num().get_si() % 2 ? -1 : 1;
    int wrapping = 0;
    for (int g = 0; g < G.size(); ++g) {
      REQUIRE(a.entries(g).size() == b.entries(g).size());
      if (a.entries(g).empty()) continue;
      bool wraps = false;
      for (int j = 0; j < p.n(); ++j)
        if (p.multiplicity(g, j) + p.multiplicity(G.grading(), j) >= 1) wraps = true;
      Cyclotomic x = a.entries(g)[0].entry.coeff(0).constantTerm(), y = b.entries(g)[0].entry.coeff(0).constantTerm();
      if (wraps) {
        ++wrapping;
        continue;
      }
      CHECK(x * y == Cyclotomic(x.order(), Rational(global)));
    }
    CHECK(wrapping > 0);
  }
}

TEST_CASE("deltaDiamond examples") {
  LGPair q = shipped("quintic.json");
  Trunc t{5, 6, 5};
  Transform dd = deltaDiamond(q, 6);
  const BlockEntry& e = onlyEntry(dd, 0);
  CHECK(e.entry.coeff(0) == SectorValue::constant(e.entry.coeff(0).trunc(), makeRational(-1, 5)));
  SectorValue in = (SectorValue::lambda(t) + SectorValue::hyperplane(t)).scaled(Rational(5));
  CohSeries out = dd.apply(single(q, Side::Y, 0, in, 0, Orders::make(4, 6)));
  SeriesKey k0{0, {0, 0}, 0}, k1{0, {0, 0}, -1};
  CHECK(out.coeff(k0).atLambdaZero() == SectorValue::constant(out.coeff(k0).trunc(), Rational(-1)).atLambdaZero());
  SectorValue want(out.coeff(k1).trunc());
  want.addTerm(Monomial{0, 1, 1, {}}, Cyclotomic(5, makeRational(-5, 2)));
  CHECK(out.coeff(k1).atLambdaZero() == want.atLambdaZero());
  CHECK_THROWS_AS(dd.apply(single(q, Side::Y, 0, SectorValue::constant(t, Rational(1)), 0, Orders::make(4, 6))),
                  NonDivisibleError);
}

TEST_CASE("uBar blocks") {
  for (const LGPair& p : allPairs()) {
    const int d = p.degree();
    Trunc t{static_cast<unsigned>(d), 5, 4};
    CHECK(uBarEntry(p, 0, t, UBarRoute::GeometricSum) == geometricSum(d, t));
    for (int b = 1; b < d; ++b) {
      CHECK(uBarEntry(p, b, t, UBarRoute::GeometricSum).constantTerm().isZero());
      CHECK(uBarEntry(p, b, t, UBarRoute::Quotient) == uBarEntry(p, b, t, UBarRoute::GeometricSum));
    }
  }
  LGPair q = shipped("quintic.json");
  Trunc t{5, 3, 1};
  SectorValue e1 = uBarEntry(q, 1, t, UBarRoute::Quotient);
  Cyclotomic lam;
  for (auto& [m, c] : e1.terms())
    if (m.lam == 1 && m.h == 0) lam = c;
  CHECK(lam * (Cyclotomic::xiPow(5, 1) - Cyclotomic(5, Rational(1))) == Cyclotomic(5, Rational(1)));
}

TEST_CASE("uBar shifted-input law") {
  LGPair q = shipped("quintic.json");
  const auto& G = q.group();
  Transform u = uBar(q, 4);
  for (int m = 0; m < 5; ++m) {
    int in = G.gradingPow(m);
    for (auto& be : u.entries(in)) {
      int bprime = -1;
      for (int b = 0; b < 5; ++b)
        if (G.gradingPow(-b) == be.out) bprime = b;
      REQUIRE(bprime >= 0);
      SectorValue v = be.entry.coeff(0);
      CHECK(v == uBarEntry(q, bprime + m, v.trunc(), UBarRoute::Quotient));
    }
  }
}

TEST_CASE("degenerate block identity") {
  for (int d : {3, 4, 5, 6}) {
    Trunc t{static_cast<unsigned>(d), 6, 3};
    SectorValue x = SectorValue::lambda(t) + SectorValue::hyperplane(t);
    SectorValue one = SectorValue::constant(t, Rational(1));
    SectorValue lhs = seriesExp(x.scaled(Rational(d))) - one;
    SectorValue rhs = (seriesExp(x) - one) * geometricSum(d, t).scaled(Rational(d));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("grading operators") {
  LGPair q = shipped("quintic.json");
  const auto& G = q.group();
  Trunc t{5, 2, 1};
  SectorValue one = SectorValue::constant(t, Rational(1));
  CHECK(zGrading(q, Side::X, 1).apply(single(q, Side::X, 0, one)).terms() == single(q, Side::X, 0, one).terms());
  for (int g = 0; g < G.size(); ++g) {
    CohSeries out = zGrading(q, Side::X, 1).apply(single(q, Side::X, g, one));
    CHECK(out.terms() == single(q, Side::X, g, one, q.age(g).get_num().get_si()).terms());
  }
  Trunc ty{5, 2, 5};
  SectorValue h2 = SectorValue::hyperplane(ty) * SectorValue::hyperplane(ty);
  CohSeries s = deg0Scaling(Side::Y, 1).apply(single(q, Side::Y, 0, h2, 0, Orders::make(4, 2)));
  CHECK(s.coeff(SeriesKey{0, {0, 0}, 0}) == h2.timesTau(2));
}

TEST_CASE("pullback to Z") {
  LGPair q = shipped("quintic.json");
  Trunc t{5, 2, 5};
  SectorValue h = SectorValue::hyperplane(t);
  SectorValue h4 = seriesPow(h, 4);
  CHECK(pullbackToZ(q).apply(single(q, Side::Y, 0, h4)).isZero());
  CohSeries unit = pullbackToZ(q).apply(single(q, Side::Y, 0, SectorValue::constant(t, Rational(1))));
  CHECK(unit.size() == 1);
  CHECK(unit.terms().begin()->second.constantTerm() == Cyclotomic(5, Rational(1)));
  LGPair w = shipped("weighted6.json");
  int killed = 0;
  for (int g = 0; g < w.group().size(); ++g) {
    if (w.fixedDim(g) != 1) continue;
    ++killed;
    Trunc t1{6, 2, 1};
    CHECK(pullbackToZ(w).apply(single(w, Side::Y, g, SectorValue::constant(t1, Rational(1)))).isZero());
  }
  CHECK(killed == 2);
}

TEST_CASE("transforms are linear") {
  std::mt19937 rng(5);
  for (const LGPair& p : allPairs()) {
    std::vector<Transform> xs{iC(p, p.maxTwist()), uBar(p, 3), deltaCirc(p), zGrading(p, Side::X, -1, 1), bigU(p, 3)};
    for (auto& tr : xs)
      for (int trial = 0; trial < 3; ++trial) {
        CohSeries a = randomSeries(p, tr.domain(), rng, 3), b = randomSeries(p, tr.domain(), rng, 3);
        Cyclotomic alpha(p.degree(), makeRational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3));
        CohSeries lhs = tr.apply(a.scaled(alpha) + b);
        CohSeries rhs = tr.apply(a).scaled(alpha) + tr.apply(b);
        CHECK_MESSAGE(lhs.terms() == rhs.terms(), tr.name());
      }
  }
}

TEST_CASE("bigU of zero is zero") {
  for (const LGPair& p : allPairs()) {
    CohSeries zero(Side::X, p.degree(), hBoundsFor(p, Side::X), xVariables(p), Orders::make(4, 3));
    CHECK(bigU(p, 3).apply(zero).isZero());
  }
}

TEST_CASE("Gamma atom canonicalization") {
  Trunc t{5, 2, 1};
  SectorValue one = SectorValue::constant(t, Rational(1));
  GammaAtom shifted{1, makeRational(6, 5)}, base{1, makeRational(1, 5)};
  // 1/Gamma(1 - beta - 6/5) = (-beta - 1/5) / Gamma(1 - beta - 1/5)
  SectorValue got = canonicalizeAtoms(one.timesAtom(shifted, -1));
  SectorValue want(t);
  want.addTerm(Monomial{1, 0, -1, {{base, -1}}}, Cyclotomic(5, Rational(-1)));
  want.addTerm(Monomial{0, 0, 0, {{base, -1}}}, Cyclotomic(5, makeRational(-1, 5)));
  CHECK(got == want);
  GammaAtom pole{1, Rational(1)};
  CHECK(canonicalizeAtoms(one.timesAtom(pole, 1)) == one.timesAtom(pole, 1));
}

TEST_CASE("rank over the cyclotomic field") {
  Cyclotomic one(3, Rational(1)), xi = Cyclotomic::xiPow(3, 1), zero(3);
  CHECK(rankOverCyclotomic({{one, xi}, {xi, xi * xi}}) == 1);
  CHECK(rankOverCyclotomic({{one, xi}, {xi, one}}) == 2);
  CHECK(rankOverCyclotomic({{zero, zero}}) == 0);
}

TEST_CASE("transform dump lists every block") {
  LGPair q = shipped("quintic.json");
  std::string s = iC(q, 1).dump(&q);
  CHECK(s.find("iC") != std::string::npos);
  CHECK(s.find("j") != std::string::npos);
}
