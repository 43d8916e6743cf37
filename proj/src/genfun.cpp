#include "lgcy/genfun.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace lgcy {

namespace {

// Calls f on every tuple of `n` nonnegative integers with total at most T.
void forEachTuple(int n, int T, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      f(a);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      a[i] = k;
      rec(i + 1, left - k);
    }
    a[i] = 0;
  };
  rec(0, T);
}

Rational invFactorials(const std::vector<int>& a, size_t from = 0) {
  Rational r = 1;
  for (size_t i = from; i < a.size(); ++i) r /= factorial(static_cast<unsigned>(a[i]));
  return r;
}

unsigned orderOf(const LGPair& p) { return static_cast<unsigned>(p.degree()); }

int toInt(const Rational& q, const char* what) {
  if (!isIntegral(q)) throw std::domain_error(std::string(what) + " is not an integer");
  return static_cast<int>(q.get_num().get_si());
}

// a^j = sum_s k_s m_j(g_s) over the noncompact sectors; tup[1 + s] = k_s.
Rational insertionShift(const LGPair& p, const std::vector<int>& tup, int j) {
  const auto& S = p.noncompactSectors();
  Rational a = 0;
  for (size_t s = 0; s < S.size(); ++s) a += p.multiplicity(S[s], j) * tup[1 + s];
  return a;
}

int insertionProduct(const LGPair& p, const std::vector<int>& tup) {
  const auto& G = p.group();
  const auto& S = p.noncompactSectors();
  int h = G.identity();
  for (size_t s = 0; s < S.size(); ++s) h = G.mul(h, G.pow(S[s], tup[1 + s]));
  return h;
}

// sum_s (age(g_s) - 1) k_s.
int ageShift(const LGPair& p, const std::vector<int>& tup) {
  const auto& S = p.noncompactSectors();
  Rational e = 0;
  for (size_t s = 0; s < S.size(); ++s) e += (p.age(S[s]) - 1) * tup[1 + s];
  return toInt(e, "age shift");
}

int insertionCount(const std::vector<int>& tup) { return std::accumulate(tup.begin() + 1, tup.end(), 0); }

ZLaurentSeries linearForm(const Trunc& t, const Rational& lam, const Rational& h, const Rational& z) {
  ZLaurentSeries r(t);
  SectorValue v(t);
  if (lam != 0) v.addTerm(Monomial{1, 0, 0, {}}, Cyclotomic(t.order, lam));
  if (h != 0) v.addTerm(Monomial{0, 1, 0, {}}, Cyclotomic(t.order, h));
  r.add(0, v);
  if (z != 0) r.add(1, SectorValue::constant(t, z));
  return r;
}

// 1 / (h H + a z) = sum_k (-h/a)^k H^k / (a z^{k+1}), a != 0.
ZLaurentSeries invertHZ(const Trunc& t, const Rational& h, const Rational& a) {
  ZLaurentSeries r(t);
  Rational c = 1 / a;
  for (int k = 0; k < t.hBound; ++k) {
    SectorValue v(t);
    v.addTerm(Monomial{0, k, 0, {}}, Cyclotomic(t.order, c));
    r.add(-1 - k, v);
    c *= -h / a;
  }
  return r;
}

void addLaurent(CohSeries& s, int sector, const std::vector<int>& tup, int zShift, const ZLaurentSeries& v,
                const Rational& scale) {
  for (auto& [ze, c] : v.terms()) s.add(SeriesKey{sector, tup, zShift + ze}, c.scaled(scale));
}

// Gauss-Jordan inverse of a small rational matrix.
std::vector<std::vector<Rational>> invertMatrix(std::vector<std::vector<Rational>> a) {
  size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("pairing matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational f = 1 / a[col][col];
    for (size_t c = 0; c < n; ++c) {
      a[col][c] *= f;
      inv[col][c] *= f;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational g = a[r][col];
      for (size_t c = 0; c < n; ++c) {
        a[r][c] -= g * a[col][c];
        inv[r][c] -= g * inv[col][c];
      }
    }
  }
  return inv;
}

std::vector<int> allSectors(const LGPair& p) {
  std::vector<int> v(p.group().size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

std::vector<Variable> sectorVariables(const LGPair& p, const std::vector<int>& sectors) {
  std::vector<Variable> v;
  for (int g : sectors) v.push_back(Variable{"t^" + p.sectorName(g), g});
  return v;
}

std::vector<Variable> xVariables(const LGPair& p) {
  std::vector<Variable> v{Variable{"t", p.group().grading()}};
  for (auto& x : sectorVariables(p, p.noncompactSectors())) v.push_back(x);
  return v;
}

std::vector<Variable> yVariables(const LGPair& p) {
  std::vector<Variable> v{Variable{"q", p.group().gradingPow(-1)}};
  for (auto& x : sectorVariables(p, p.noncompactSectors())) v.push_back(x);
  return v;
}

CohSeries untwistedJ(const LGPair& p, int c, const Orders& o, std::vector<int> active) {
  if (!p.twistValid(c)) throw std::invalid_argument("twist needs c * c_j < d for every j");
  if (active.empty()) active = allSectors(p);
  const auto& G = p.group();
  CohSeries s(Side::LG, orderOf(p), hBoundsFor(p, Side::LG), sectorVariables(p, active), o, c);
  Trunc t{orderOf(p), o.lambda, 1};
  forEachTuple(static_cast<int>(active.size()), o.T, [&](const std::vector<int>& a) {
    int h = G.identity();
    for (size_t i = 0; i < a.size(); ++i) h = G.mul(h, G.pow(active[i], a[i]));
    s.add(SeriesKey{h, a, 1 - totalDegree(a)}, SectorValue::constant(t, invFactorials(a)));
  });
  return s;
}

Rational psiIntegralOracle(const std::vector<int>& exponents) {
  int n = static_cast<int>(exponents.size());
  if (n < 3) throw std::invalid_argument("psi integrals need at least three marked points");
  for (int a : exponents)
    if (a < 0) throw std::invalid_argument("psi exponents must be nonnegative");
  if (std::accumulate(exponents.begin(), exponents.end(), 0) != n - 3) return Rational(0);
  if (n == 3) return Rational(1);
  static std::mutex mu;
  static std::map<std::vector<int>, Rational> memo;
  std::vector<int> key = exponents;
  std::sort(key.begin(), key.end());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  // string equation: forget a point carrying psi^0
  std::vector<int> rest(key.begin() + 1, key.end());
  Rational r = 0;
  for (size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == 0) continue;
    std::vector<int> lowered = rest;
    --lowered[i];
    r += psiIntegralOracle(lowered);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[key] = r;
  return r;
}

CohSeries oracleJ(const LGPair& p, int c, const Orders& o, std::vector<int> active) {
  if (!p.twistValid(c)) throw std::invalid_argument("twist needs c * c_j < d for every j");
  if (active.empty()) active = allSectors(p);
  const auto& G = p.group();
  int n = G.size();
  std::vector<std::vector<Rational>> eta(n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) eta[a][b] = p.pairTwisted(c, a, b, Specialization::Untwisted).coeff;
  auto etaInv = invertMatrix(eta);
  Rational norm = 1;
  for (int j = 0; j < p.n(); ++j) norm /= p.dbar();
  int jc = G.gradingPow(c);

  CohSeries s(Side::LG, orderOf(p), hBoundsFor(p, Side::LG), sectorVariables(p, active), o, c);
  Trunc t{orderOf(p), o.lambda, 1};
  forEachTuple(static_cast<int>(active.size()), o.T, [&](const std::vector<int>& a) {
    int total = totalDegree(a);
    if (total == 0) {
      s.add(SeriesKey{G.identity(), a, 1}, SectorValue::constant(t, Rational(1)));
      return;
    }
    if (total == 1) {
      int i = static_cast<int>(std::find(a.begin(), a.end(), 1) - a.begin());
      s.add(SeriesKey{active[i], a, 0}, SectorValue::constant(t, Rational(1)));
      return;
    }
    std::vector<int> ins;
    for (size_t i = 0; i < a.size(); ++i)
      for (int k = 0; k < a[i]; ++k) ins.push_back(G.mul(active[i], jc));
    Rational weight = invFactorials(a);
    for (int g0 = 0; g0 < n; ++g0) {
      std::vector<int> marked{G.mul(g0, jc)};
      marked.insert(marked.end(), ins.begin(), ins.end());
      if (!p.isNonempty(c, 0, marked)) continue;
      for (int psi = 0; psi < total; ++psi) {
        std::vector<int> ex(total + 1, 0);
        ex[0] = psi;
        Rational corr = psiIntegralOracle(ex) * norm;
        if (corr == 0) continue;
        for (int h = 0; h < n; ++h) {
          if (etaInv[g0][h] == 0) continue;
          s.add(SeriesKey{h, a, -1 - psi}, SectorValue::constant(t, Rational(corr * etaInv[g0][h] * weight)));
        }
      }
    }
  });
  return s;
}

CohSeries iFunctionX(const LGPair& p, const Orders& o) {
  p.requireCalabiYau();
  const auto& G = p.group();
  auto vars = xVariables(p);
  CohSeries s(Side::X, orderOf(p), hBoundsFor(p, Side::X), vars, o);
  s.setPrefactor({PrefactorToken{"t", Rational(p.degree()), Rational(0), 0, -1}});
  Trunc t{orderOf(p), o.lambda, 1};
  forEachTuple(static_cast<int>(vars.size()), o.T, [&](const std::vector<int>& tup) {
    int k0 = tup[0];
    int h = G.mul(G.gradingPow(k0), insertionProduct(p, tup));
    ZLaurentSeries m = ZLaurentSeries::constant(SectorValue::constant(t, Rational(1)));
    for (int j = 0; j < p.n(); ++j) {
      Rational r = makeRational(static_cast<long>(k0) * p.fermat().weights[j], p.degree()) + insertionShift(p, tup, j);
      long steps = floorOf(r).get_si();
      m = m * gammaRatioRewrite(Rational(p.fermat().weights[j]), fracOf(r), static_cast<unsigned>(steps), t);
    }
    addLaurent(s, h, tup, 1 - k0 - insertionCount(tup), m, invFactorials(tup));
  });
  return s;
}

CohSeries iFunctionY(const LGPair& p, const Orders& o, EmptyRangeConvention conv, std::vector<SeriesKey>* flagged) {
  p.requireCalabiYau();
  const auto& G = p.group();
  const int d = p.degree();
  auto vars = yVariables(p);
  CohSeries s(Side::Y, orderOf(p), hBoundsFor(p, Side::Y), vars, o);
  s.setPrefactor({PrefactorToken{"q", Rational(0), Rational(1), 0, -1}});
  forEachTuple(static_cast<int>(vars.size()), o.T, [&](const std::vector<int>& tup) {
    int k0 = tup[0];
    int h = G.mul(G.gradingPow(-k0), insertionProduct(p, tup));
    int nh = p.fixedDim(h);
    if (nh == 0) return;
    Trunc t{orderOf(p), o.lambda, nh};
    ZLaurentSeries one = ZLaurentSeries::constant(SectorValue::constant(t, Rational(1)));
    ZLaurentSeries base = one;
    for (int l = 0; l < k0; ++l) base = base * linearForm(t, Rational(-d), Rational(-d), Rational(-l));
    ZLaurentSeries gammaSide = base, emptySide = base;
    for (int j = 0; j < p.n(); ++j) {
      Rational cj = p.fermat().weights[j];
      Rational r = makeRational(static_cast<long>(k0) * p.fermat().weights[j], d) - insertionShift(p, tup, j);
      Rational mj = p.multiplicity(h, j);
      int nj = toInt(r + mj, "shifted exponent");
      if (nj >= 0) {
        ZLaurentSeries f = one;
        for (int i = 0; i < nj; ++i) f = f * invertHZ(t, cj, r - i);
        gammaSide = gammaSide * f;
        emptySide = emptySide * f;
      } else {
        ZLaurentSeries f = one;
        for (int i = 1; i <= -nj; ++i) f = f * linearForm(t, Rational(0), cj, r + i);
        gammaSide = gammaSide * f;
      }
    }
    int zShift = 1 - insertionCount(tup);
    Rational scale = invFactorials(tup, 1);
    if (flagged && !(gammaSide == emptySide)) flagged->push_back(SeriesKey{h, tup, zShift});
    addLaurent(s, h, tup, zShift, conv == EmptyRangeConvention::GammaConsistent ? gammaSide : emptySide, scale);
  });
  return s;
}

CohSeries hFunctionX(const LGPair& p, const Orders& o) {
  p.requireCalabiYau();
  const auto& G = p.group();
  auto vars = xVariables(p);
  CohSeries s(Side::X, orderOf(p), hBoundsFor(p, Side::X), vars, o);
  s.setPrefactor({PrefactorToken{"t", Rational(p.degree()), Rational(0), -1, 0}});
  Trunc t{orderOf(p), o.lambda, 1};
  forEachTuple(static_cast<int>(vars.size()), o.T, [&](const std::vector<int>& tup) {
    int k0 = tup[0];
    int h = G.mul(G.gradingPow(k0), insertionProduct(p, tup));
    SectorValue v = SectorValue::constant(t, invFactorials(tup));
    for (int j = 0; j < p.n(); ++j) {
      Rational r = makeRational(static_cast<long>(k0) * p.fermat().weights[j], p.degree()) + insertionShift(p, tup, j);
      v = v.timesAtom(GammaAtom{Rational(p.fermat().weights[j]), r, Rational(0), -1, 0}, -1);
    }
    s.add(SeriesKey{h, tup, ageShift(p, tup)}, v);
  });
  return s;
}

CohSeries hFunctionY(const LGPair& p, const Orders& o) {
  p.requireCalabiYau();
  const auto& G = p.group();
  const int d = p.degree();
  auto vars = yVariables(p);
  CohSeries s(Side::Y, orderOf(p), hBoundsFor(p, Side::Y), vars, o);
  s.setPrefactor({PrefactorToken{"q", Rational(0), Rational(1), -1, 0}});
  forEachTuple(static_cast<int>(vars.size()), o.T, [&](const std::vector<int>& tup) {
    int k0 = tup[0];
    int h = G.mul(G.gradingPow(-k0), insertionProduct(p, tup));
    int nh = p.fixedDim(h);
    if (nh == 0) return;
    Trunc t{orderOf(p), o.lambda, nh};
    SectorValue v = SectorValue::constant(t, invFactorials(tup, 1));
    v = v.timesAtom(GammaAtom{Rational(d), Rational(k0), Rational(d), -1, 0}, -1);
    for (int j = 0; j < p.n(); ++j) {
      Rational r = makeRational(static_cast<long>(k0) * p.fermat().weights[j], d) - insertionShift(p, tup, j);
      v = v.timesAtom(GammaAtom{Rational(0), Rational(-r), Rational(-p.fermat().weights[j]), -1, 0}, -1);
    }
    s.add(SeriesKey{h, tup, ageShift(p, tup)}, v);
  });
  return s;
}

Transform reconstructionOp(const LGPair& p, Side side, int lambdaOrder) {
  return Transform::composite("z^(1-Gr) Gamma tau^(deg0/2)", {deg0Scaling(side, 1), gammaClassOp(p, side, false, lambdaOrder),
                                                              zGrading(p, side, -1, 1)});
}

HFactorization hFactorization(const LGPair& p, const CohSeries& iSeries, Side side) {
  if (side != Side::X && side != Side::Y) throw std::invalid_argument("H-factorization exists on the X and Y sides only");
  const Orders& o = iSeries.orders();
  CohSeries h = side == Side::X ? hFunctionX(p, o) : hFunctionY(p, o);
  Transform op = reconstructionOp(p, side, o.lambda);
  CohSeries back = op.apply(h).windowed();
  CohSeries target = iSeries.windowed();
  if (!(back.prefactor() == target.prefactor())) {
    std::string a, b;
    for (auto& x : back.prefactor()) a += x.toString() + " ";
    for (auto& x : target.prefactor()) b += x.toString() + " ";
    throw IdentityFailure("prefactor tokens differ", SeriesKey{-1, {}, 0}, a, b);
  }
  if (auto k = back.firstDifference(target))
    throw IdentityFailure("factorization residual at " + k->toString(), *k, back.coeff(*k).toString(),
                          target.coeff(*k).toString());
  return HFactorization{op, h};
}

CohSeries hContinued(const LGPair& p, const Orders& o) {
  p.requireCalabiYau();
  p.requirePeriodIsDegree();
  const auto& G = p.group();
  const int d = p.degree();
  auto vars = xVariables(p);
  auto hb = hBoundsFor(p, Side::Y);
  CohSeries s(Side::Y, orderOf(p), hb, vars, o);
  s.setPrefactor({PrefactorToken{"t", Rational(d), Rational(0), -1, 0}});
  std::map<std::pair<int, int>, SectorValue> blockCache;
  auto block = [&](int shift, int nh) -> const SectorValue& {
    auto key = std::make_pair(shift % d, nh);
    auto it = blockCache.find(key);
    if (it == blockCache.end())
      it = blockCache.emplace(key, uBarEntry(p, shift, Trunc{orderOf(p), o.lambda, nh}, UBarRoute::Quotient)).first;
    return it->second;
  };
  forEachTuple(static_cast<int>(vars.size()), o.T, [&](const std::vector<int>& tup) {
    int m = tup[0];
    int ins = insertionProduct(p, tup);
    Trunc t0{orderOf(p), o.lambda, 1};
    SectorValue base = SectorValue::constant(t0, invFactorials(tup));
    for (int j = 0; j < p.n(); ++j) {
      Rational r = makeRational(static_cast<long>(m) * p.fermat().weights[j], d) + insertionShift(p, tup, j);
      base = base.timesAtom(GammaAtom{Rational(p.fermat().weights[j]), r, Rational(0), -1, 0}, -1);
    }
    int z = ageShift(p, tup);
    for (int b = 0; b < d; ++b) {
      int out = G.mul(G.gradingPow(-b), ins);
      if (hb[out] == 0) continue;
      Trunc t{orderOf(p), o.lambda, hb[out]};
      s.add(SeriesKey{out, tup, z}, base.retruncated(t) * block(b + m, hb[out]));
    }
  });
  return s;
}

Rational gammaResidue(int m, int b, int d) {
  if (m < 0 || b < 0 || b >= d) throw std::invalid_argument("residue needs m >= 0 and 0 <= b < d");
  // Res_{u=-m} Gamma(u) = Res_{u=-m+1} Gamma(u) / (-m), starting from Res_{u=0} = 1
  Rational r = 1;
  for (int k = 1; k <= m; ++k) r /= -k;
  // u = d s + b + d(lambda+H)/tau, so ds = du/d
  return r / d;
}

bool residueUnitCheck(int m, int b, int d) {
  // pole s = -(lambda+H)/tau - b/d - m/d as (coefficient of (lambda+H)/tau, constant)
  Rational sSlope = -1, sConst = -makeRational(b, d) - makeRational(m, d);
  bool atPole = d * sSlope + d == 0 && d * sConst + b == -m;
  Rational expected = (m % 2 ? Rational(-1) : Rational(1)) / (factorial(static_cast<unsigned>(m)) * d);
  return atPole && gammaResidue(m, b, d) == expected;
}

CohSeries tDerivative(const CohSeries& s, int var, PrefactorMode mode) {
  const std::string& name = s.variables().at(var).name;
  CohSeries out = s.emptyLike();
  std::vector<PrefactorToken> kept, own;
  for (auto& tok : s.prefactor()) (tok.base == name ? own : kept).push_back(tok);
  if (mode == PrefactorMode::Strip) out.setPrefactor(kept);
  for (auto& [k, v] : s.terms()) {
    int a = k.tdeg[var];
    std::vector<int> lowered = k.tdeg;
    --lowered[var];
    if (a != 0) out.add(SeriesKey{k.sector, lowered, k.z + 1}, v.scaled(Rational(a)));
    if (mode == PrefactorMode::Retain) {
      for (auto& tok : own) {
        SectorValue f(v.trunc());
        if (tok.lam != 0) f.addTerm(Monomial{1, 0, tok.tauPow, {}}, Cyclotomic(v.trunc().order, tok.lam));
        if (tok.h != 0) f.addTerm(Monomial{0, 1, tok.tauPow, {}}, Cyclotomic(v.trunc().order, tok.h));
        out.add(SeriesKey{k.sector, lowered, k.z + 1 + tok.zPow}, v * f);
      }
    }
  }
  return out;
}

std::optional<SeriesKey> lambdaDivisibilityWitness(const LGPair& p, const CohSeries& s) {
  for (auto& [k, v] : s.terms()) {
    int n = p.fixedDim(k.sector);
    if (n > 0 && v.lambdaValuation() < n) return k;
  }
  return std::nullopt;
}

CohSeries lambdaLimit(const CohSeries& s) {
  CohSeries out = s.emptyLike();
  for (auto& [k, v] : s.terms()) out.add(k, v.atLambdaZero());
  return out;
}

CohSeries fjrwIFunction(const LGPair& p, const Orders& o, CircSign sign) {
  p.requireCalabiYau();
  p.requireSL();
  int maxN = 0;
  for (int g = 0; g < p.group().size(); ++g) maxN = std::max(maxN, p.fixedDim(g));
  if (o.lambda < maxN) throw std::invalid_argument("lambda order must reach the largest fixed dimension");
  CohSeries d = tDerivative(iFunctionX(p, o), 0, PrefactorMode::Strip);
  if (auto k = lambdaDivisibilityWitness(p, d))
    throw DivisibilityError("coefficient not divisible by lambda^{N_g} at " + k->toString(), *k);
  return deltaCirc(p, sign).apply(lambdaLimit(d));
}

}  // namespace lgcy
