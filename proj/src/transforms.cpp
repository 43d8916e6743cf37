#include "lgcy/transforms.hpp"

#include <algorithm>
#include <sstream>

namespace lgcy {

namespace {

// X = (w lambda + wH H) tau^ts for the atom's variable.
SectorValue atomVariable(const GammaAtom& a, const Trunc& t) {
  SectorValue x(t);
  if (a.weight != 0) x.addTerm(Monomial{1, 0, a.tauScale, {}}, Cyclotomic(t.order, a.weight));
  if (a.hWeight != 0) x.addTerm(Monomial{0, 1, a.tauScale, {}}, Cyclotomic(t.order, a.hWeight));
  return x;
}

// prod_{i<count} (shift + i - X): the factor relating Gamma(1-X-rho) to neighbouring offsets.
SectorValue shiftProduct(const SectorValue& x, const Rational& shift, long count) {
  const Trunc& t = x.trunc();
  SectorValue r = SectorValue::constant(t, Rational(1));
  for (long i = 0; i < count; ++i) r *= SectorValue::constant(t, Rational(shift + i)) - x;
  return r;
}

}  // namespace

SectorValue canonicalizeAtoms(const SectorValue& v) {
  const Trunc& t = v.trunc();
  SectorValue out(t);
  for (auto& [m, c] : v.terms()) {
    if (m.atoms.empty()) {
      out.addTerm(m, c);
      continue;
    }
    SectorValue factor = SectorValue::constant(t, Rational(1));
    AtomPowers kept;
    for (auto& [a, p] : m.atoms) {
      if (a.zScale != 0) throw std::invalid_argument("canonicalizeAtoms: atom carries a z scaling");
      Rational rho = fracOf(a.offset);
      long n = floorOf(a.offset).get_si();
      GammaAtom base = a;
      base.offset = rho;
      if (n == 0) {
        kept = mergeAtoms(kept, AtomPowers{{a, p}});
        continue;
      }
      SectorValue x = atomVariable(a, t);
      // Gamma(1-X-rho-n) = Gamma(1-X-rho) * R, R = 1/P_n (n > 0) or Q_{|n|} (n < 0)
      SectorValue r;
      bool rIsInverse;
      if (n > 0) {
        r = shiftProduct(x, -rho - Rational(n - 1), n);  // prod_{l<n} (-X - rho - l)
        rIsInverse = true;
      } else {
        r = shiftProduct(x, 1 - rho, -n);  // prod_{i<|n|} (1 - X - rho + i)
        rIsInverse = false;
      }
      // factor R^p
      bool needInverse = (p > 0) == rIsInverse;
      if (needInverse) {
        if (r.constantTerm().isZero()) {
          kept = mergeAtoms(kept, AtomPowers{{a, p}});
          continue;
        }
        r = seriesInvert(r);
      }
      factor *= seriesPow(r, static_cast<unsigned>(std::abs(p)));
      kept = mergeAtoms(kept, AtomPowers{{base, p}});
    }
    SectorValue mono(t);
    mono.addTerm(Monomial{m.lam, m.h, m.tau, kept}, c);
    out += mono * factor;
  }
  return out;
}

Transform Transform::block(std::string name, Side from, Side to, std::vector<int> toHBounds, int toTwist) {
  Transform t;
  t.kind_ = Kind::Block;
  t.name_ = std::move(name);
  t.from_ = from;
  t.to_ = to;
  t.toHBounds_ = std::move(toHBounds);
  t.toTwist_ = toTwist;
  return t;
}

Transform Transform::zGrading(std::string name, Side side, std::vector<Rational> ages, int sign, int shift) {
  Transform t;
  t.kind_ = Kind::ZGrading;
  t.name_ = std::move(name);
  t.from_ = t.to_ = side;
  t.ages_ = std::move(ages);
  t.sign_ = sign;
  t.shift_ = shift;
  return t;
}

Transform Transform::deg0Scaling(std::string name, Side side, int sign) {
  Transform t;
  t.kind_ = Kind::Deg0Scaling;
  t.name_ = std::move(name);
  t.from_ = t.to_ = side;
  t.sign_ = sign;
  return t;
}

Transform Transform::composite(std::string name, std::vector<Transform> parts) {
  if (parts.empty()) throw std::invalid_argument("composite of no transforms");
  Transform t;
  t.kind_ = Kind::Composite;
  t.name_ = std::move(name);
  t.from_ = parts.front().from_;
  t.to_ = parts.back().to_;
  t.parts_ = std::move(parts);
  return t;
}

void Transform::addEntry(int in, int out, ZLaurentSeries entry) {
  if (kind_ != Kind::Block) throw std::logic_error("entries only exist on block transforms");
  blocks_[in].push_back(BlockEntry{out, std::move(entry)});
}

const std::vector<BlockEntry>& Transform::entries(int in) const {
  static const std::vector<BlockEntry> none;
  auto it = blocks_.find(in);
  return it == blocks_.end() ? none : it->second;
}

CohSeries Transform::apply(const CohSeries& x) const {
  if (x.side() != from_) throw std::invalid_argument(name_ + ": input lives on side " + sideName(x.side()));
  switch (kind_) {
    case Kind::Block: return applyBlock(x);
    case Kind::ZGrading: return applyZGrading(x);
    case Kind::Deg0Scaling: return applyDeg0(x);
    case Kind::Composite: {
      CohSeries y = x;
      for (auto& p : parts_) y = p.apply(y);
      return y;
    }
  }
  return x;
}

CohSeries Transform::applyBlock(const CohSeries& x) const {
  CohSeries out(to_, x.cycloOrder(), toHBounds_, x.variables(), x.orders(), to_ == Side::LG ? toTwist_ : x.twist());
  out.setPrefactor(x.prefactor());
  for (auto& [k, v] : x.terms()) {
    auto it = blocks_.find(k.sector);
    if (it == blocks_.end()) continue;
    for (auto& e : it->second) {
      int hb = toHBounds_.at(e.out);
      if (hb == 0) continue;
      Trunc vt = v.trunc();
      vt.hBound = hb;
      SectorValue vv = v.retruncated(vt);
      for (auto& [ze, c] : e.entry.terms()) {
        Trunc ct = c.trunc();
        ct.hBound = hb;
        SectorValue cc = c.trunc() == ct ? c : c.retruncated(ct);
        out.add(SeriesKey{e.out, k.tdeg, k.z + ze}, vv * cc);
      }
    }
  }
  if (canonicalize_) {
    CohSeries c = out.emptyLike();
    for (auto& [k, v] : out.terms()) c.add(k, canonicalizeAtoms(v));
    out = c;
  }
  if (divide_) {
    int maxH = *std::max_element(toHBounds_.begin(), toHBounds_.end());
    Orders o = out.orders();
    o.lambda -= maxH;
    if (o.lambda < 0) throw std::domain_error(name_ + ": lambda order too small for division by (lambda + H)");
    CohSeries q = out.emptyLike();
    q.setOrders(o);
    for (auto& [k, v] : out.terms()) {
      auto r = divideByLambdaPlusH(v);
      if (!r) throw NonDivisibleError(name_ + ": coefficient not divisible by (lambda + H) at " + k.toString(), k);
      q.add(k, *r);
    }
    out = q;
  }
  return out;
}

CohSeries Transform::applyZGrading(const CohSeries& x) const {
  CohSeries out = x.emptyLike();
  std::vector<PrefactorToken> pre = x.prefactor();
  for (auto& p : pre) p.zPow += sign_;
  out.setPrefactor(pre);
  for (auto& [k, v] : x.terms()) {
    std::map<int, SectorValue> split;
    for (auto& [m, c] : v.terms()) {
      Rational deg = ages_.at(k.sector) + m.lam + m.h;
      if (!isIntegral(deg)) throw std::domain_error(name_ + ": non-integral degree on sector " + std::to_string(k.sector));
      int dz = sign_ * static_cast<int>(deg.get_num().get_si()) + shift_;
      Monomial n = m;
      for (auto& [a, pw] : n.atoms) a.zScale += sign_;
      std::sort(n.atoms.begin(), n.atoms.end());
      auto it = split.find(dz);
      if (it == split.end()) it = split.emplace(dz, SectorValue(v.trunc())).first;
      it->second.addTerm(n, c);
    }
    for (auto& [dz, w] : split) out.add(SeriesKey{k.sector, k.tdeg, k.z + dz}, w);
  }
  return out;
}

CohSeries Transform::applyDeg0(const CohSeries& x) const {
  CohSeries out = x.emptyLike();
  std::vector<PrefactorToken> pre = x.prefactor();
  for (auto& p : pre) p.tauPow += sign_;
  out.setPrefactor(pre);
  for (auto& [k, v] : x.terms()) {
    SectorValue w(v.trunc());
    for (auto& [m, c] : v.terms()) {
      Monomial n = m;
      n.tau += sign_ * (m.lam + m.h);
      for (auto& [a, pw] : n.atoms) a.tauScale += sign_;
      std::sort(n.atoms.begin(), n.atoms.end());
      w.addTerm(n, c);
    }
    out.add(k, w);
  }
  return out;
}

std::string Transform::dump(const LGPair* pair) const {
  auto nm = [&](int g) { return pair ? pair->sectorName(g) : "g" + std::to_string(g); };
  std::ostringstream os;
  os << "transform " << name_ << ": " << sideName(from_) << " -> " << sideName(to_) << "\n";
  switch (kind_) {
    case Kind::Block:
      for (auto& [in, list] : blocks_)
        for (auto& e : list) os << "  " << nm(in) << " -> " << nm(e.out) << ": " << e.entry.toString() << "\n";
      if (divide_) os << "  entries divided by (lambda + H)\n";
      if (canonicalize_) os << "  Gamma atoms canonicalized after application\n";
      break;
    case Kind::ZGrading:
      os << "  z^(" << sign_ << " * degree/2" << (shift_ ? " + " + std::to_string(shift_) : "") << ")\n";
      break;
    case Kind::Deg0Scaling: os << "  tau^(" << sign_ << " * untwisted degree/2)\n"; break;
    case Kind::Composite:
      for (auto& p : parts_) os << p.dump(pair);
      break;
  }
  return os.str();
}

namespace {

Trunc truncOf(const LGPair& p, int lambdaOrder, int hBound) {
  return Trunc{static_cast<unsigned>(p.degree()), lambdaOrder, hBound};
}

ZLaurentSeries constantEntry(const SectorValue& v) { return ZLaurentSeries::constant(v); }

SectorValue lambdaPlusH(const Trunc& t) { return SectorValue::lambda(t) + SectorValue::hyperplane(t); }

}  // namespace

Transform iC(const LGPair& p, int c) {
  if (!p.twistValid(c)) throw std::invalid_argument("iC needs c * c_j < d for every j");
  const auto& G = p.group();
  Transform t = Transform::block("iC(" + std::to_string(c) + ")", Side::LG, Side::LG, hBoundsFor(p, Side::LG), c);
  t.setSymplecticClaimed(true);
  for (int g = 0; g < G.size(); ++g)
    t.addEntry(g, G.mul(g, G.gradingPow(-c)), constantEntry(SectorValue::constant(truncOf(p, 64, 1), Rational(1))));
  return t;
}

Transform iCInverse(const LGPair& p, int c) {
  if (!p.twistValid(c)) throw std::invalid_argument("iC needs c * c_j < d for every j");
  const auto& G = p.group();
  Transform t = Transform::block("iC(" + std::to_string(c) + ")^-1", Side::LG, Side::LG, hBoundsFor(p, Side::LG), 0);
  for (int g = 0; g < G.size(); ++g)
    t.addEntry(g, G.mul(g, G.gradingPow(c)), constantEntry(SectorValue::constant(truncOf(p, 64, 1), Rational(1))));
  return t;
}

Transform deltaCirc(const LGPair& p, CircSign sign) {
  p.requireSL();
  const auto& G = p.group();
  Transform t = Transform::block("DeltaCirc", Side::X, Side::FJRW, hBoundsFor(p, Side::FJRW));
  t.setSymplecticClaimed(true);
  for (int g = 0; g < G.size(); ++g) {
    int out = G.mul(g, G.gradingPow(-1));
    if (!p.isNarrow(out)) continue;
    Rational e = sign == CircSign::SectorAge ? p.age(g) : p.age(G.mul(g, G.grading()));
    long s = e.get_num().get_si() % 2 == 0 ? 1 : -1;
    t.addEntry(g, out, constantEntry(SectorValue::constant(truncOf(p, 64, 1), Rational(s))));
  }
  return t;
}

Transform deltaDiamond(const LGPair& p, int lambdaOrder) {
  auto hb = hBoundsFor(p, Side::Y);
  Transform t = Transform::block("DeltaDiamond", Side::Y, Side::Y, hb);
  t.setDivideByLambdaPlusH(true);
  const int d = p.degree();
  for (int g = 0; g < p.group().size(); ++g) {
    if (hb[g] == 0) continue;
    Trunc tr = truncOf(p, lambdaOrder, hb[g]);
    // -(1/d) sum_k (tau d H / 2)^k / k! z^-k
    ZLaurentSeries e(tr);
    for (int k = 0; k < hb[g]; ++k) {
      Rational coef = -Rational(1) / d / factorial(k);
      for (int i = 0; i < k; ++i) coef *= makeRational(d, 2);
      SectorValue v(tr);
      v.addTerm(Monomial{0, k, k, {}}, Cyclotomic(tr.order, coef));
      e.add(-k, v);
    }
    t.addEntry(g, g, e);
  }
  return t;
}

SectorValue substituteLambdaPlusH(const RSeries& a, const Trunc& t) {
  SectorValue x = lambdaPlusH(t);
  SectorValue r(t), pw = SectorValue::constant(t, Rational(1));
  for (size_t k = 0; k < a.size(); ++k) {
    if (pw.isZero()) break;
    r += pw.scaled(a[k]);
    pw *= x;
  }
  return r;
}

SectorValue lambdaToMinusH(const SectorValue& v) {
  SectorValue r(v.trunc());
  for (auto& [m, c] : v.terms()) {
    if (m.tau != 0 || !m.atoms.empty()) throw std::invalid_argument("lambdaToMinusH needs a plain value");
    r.addTerm(Monomial{0, m.lam + m.h, 0, {}}, m.lam % 2 ? -c : c);
  }
  return r;
}

SectorValue uBarEntry(const LGPair& p, long b, const Trunc& t, UBarRoute route) {
  const int d = p.degree();
  long bm = ((b % d) + d) % d;
  SectorValue x = lambdaPlusH(t);
  if (route == UBarRoute::GeometricSum) {
    // (1/d) sum_{a<d} xi^{ab} e^{a(lambda+H)}
    SectorValue r(t);
    for (int a = 0; a < d; ++a)
      r += seriesExp(x.scaled(Rational(a))).scaled(Cyclotomic::xiPow(t.order, a * bm));
    return r.scaled(makeRational(1, d));
  }
  if (bm == 0) {
    // ((e^{dx}-1)/x) / ((e^x-1)/x) / d as univariate series, then x = lambda + H
    size_t len = static_cast<size_t>(t.lambdaMax + t.hBound + 1);
    RSeries num(len), den(len);
    for (size_t k = 0; k < len; ++k) {
      Rational f = factorial(static_cast<unsigned>(k + 1));
      Rational dp = 1;
      for (size_t i = 0; i <= k; ++i) dp *= d;
      num[k] = dp / f;
      den[k] = 1 / f;
    }
    RSeries q = rseriesMul(num, rseriesInv(den));
    for (auto& c : q) c /= d;
    return substituteLambdaPlusH(q, t);
  }
  SectorValue one = SectorValue::constant(t, Rational(1));
  SectorValue numer = seriesExp(x.scaled(Rational(d))) - one;
  SectorValue denom = (seriesExp(x).scaled(Cyclotomic::xiPow(t.order, bm)) - one).scaled(Rational(d));
  return numer * seriesInvert(denom);
}

Transform uBar(const LGPair& p, int lambdaOrder, UBarRoute route) {
  p.requireCalabiYau();
  p.requirePeriodIsDegree();
  const auto& G = p.group();
  auto hb = hBoundsFor(p, Side::Y);
  Transform t = Transform::block("Ubar", Side::X, Side::Y, hb);
  std::map<std::pair<long, int>, ZLaurentSeries> cache;
  for (int g = 0; g < G.size(); ++g) {
    for (int b = 0; b < p.degree(); ++b) {
      int out = G.mul(g, G.gradingPow(-b));
      if (hb[out] == 0) continue;
      auto key = std::make_pair(static_cast<long>(b), hb[out]);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, constantEntry(uBarEntry(p, b, truncOf(p, lambdaOrder, hb[out]), route))).first;
      t.addEntry(g, out, it->second);
    }
  }
  return t;
}

Transform gammaClassOp(const LGPair& p, Side side, bool inverse, int lambdaOrder) {
  if (side != Side::X && side != Side::Y) throw std::invalid_argument("Gamma class exists on the X and Y sides only");
  const auto& G = p.group();
  auto hb = hBoundsFor(p, side);
  std::string nm = std::string("Gamma(") + (side == Side::X ? "X" : "Y") + ")" + (inverse ? "^-1" : "");
  Transform t = Transform::block(nm, side, side, hb);
  t.setCanonicalizeAfter(true);
  int pw = inverse ? -1 : 1;
  for (int g = 0; g < G.size(); ++g) {
    if (hb[g] == 0) continue;
    Trunc tr = truncOf(p, lambdaOrder, hb[g]);
    SectorValue v = SectorValue::constant(tr, Rational(1));
    if (side == Side::X) {
      for (int j = 0; j < p.n(); ++j)
        v = v.timesAtom(GammaAtom{Rational(p.fermat().weights[j]), p.multiplicity(g, j), Rational(0), 0, 0}, pw);
    } else {
      v = v.timesAtom(GammaAtom{Rational(p.degree()), Rational(0), Rational(p.degree()), 0, 0}, pw);
      for (int j = 0; j < p.n(); ++j)
        v = v.timesAtom(GammaAtom{Rational(0), p.multiplicity(g, j), Rational(-p.fermat().weights[j]), 0, 0}, pw);
    }
    t.addEntry(g, g, constantEntry(v));
  }
  return t;
}

Transform zGrading(const LGPair& p, Side side, int sign, int shift) {
  std::vector<Rational> ages;
  for (int g = 0; g < p.group().size(); ++g) ages.push_back(p.age(g));
  std::string nm = "z^(" + std::string(shift ? std::to_string(shift) : "") + (sign > 0 ? "+Gr" : "-Gr") + ")";
  return Transform::zGrading(nm + "[" + sideName(side) + "]", side, ages, sign, shift);
}

Transform deg0Scaling(Side side, int sign) {
  return Transform::deg0Scaling(std::string("tau^(") + (sign > 0 ? "+" : "-") + "deg0/2)[" + sideName(side) + "]", side,
                                sign);
}

Transform bigU(const LGPair& p, int lambdaOrder) {
  Transform t = Transform::composite(
      "U", {zGrading(p, Side::X, 1), gammaClassOp(p, Side::X, true, lambdaOrder), deg0Scaling(Side::X, -1),
            uBar(p, lambdaOrder), deg0Scaling(Side::Y, 1), gammaClassOp(p, Side::Y, false, lambdaOrder),
            zGrading(p, Side::Y, -1)});
  t.setSymplecticClaimed(true);
  return t;
}

Transform pullbackToZ(const LGPair& p) {
  auto hz = hBoundsFor(p, Side::Z);
  Transform t = Transform::block("pullbackToZ", Side::Y, Side::Z, hz);
  for (int g = 0; g < p.group().size(); ++g)
    if (hz[g] > 0) t.addEntry(g, g, constantEntry(SectorValue::constant(truncOf(p, 64, hz[g]), Rational(1))));
  return t;
}

int rankOverCyclotomic(std::vector<std::vector<Cyclotomic>> m) {
  int rank = 0;
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  for (size_t col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
    int piv = -1;
    for (size_t r = rank; r < m.size(); ++r)
      if (!m[r][col].isZero()) {
        piv = static_cast<int>(r);
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    Cyclotomic inv = m[rank][col].inverse();
    for (size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(r) == rank || m[r][col].isZero()) continue;
      Cyclotomic f = m[r][col] * inv;
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::string TwistEntry::toString() const {
  std::ostringstream os;
  for (size_t j = 0; j < s0Exponent.size(); ++j) {
    os << "j" << j << ": s0*" << s0Exponent[j].get_str();
    for (size_t k = 0; k < logCoeff[j].size(); ++k) os << " + s" << k + 1 << "*" << logCoeff[j][k].get_str() << "*z^" << k + 1;
    os << "; ";
  }
  return os.str();
}

Rational twistedMultiplicity(const LGPair& p, int c, int g, int j) {
  return fracOf(p.multiplicity(g, j) + makeRational(static_cast<long>(c) * p.fermat().weights[j], p.degree()));
}

TwistEntry deltaCEntry(const LGPair& p, int c, int g, int K) {
  TwistEntry e;
  for (int j = 0; j < p.n(); ++j) {
    Rational m = twistedMultiplicity(p, c, g, j);
    e.s0Exponent.push_back(bernoulliPoly(1, m));
    std::vector<Rational> row;
    for (int k = 1; k <= K; ++k) row.push_back(bernoulliPoly(k + 1, m) / factorial(k + 1));
    e.logCoeff.push_back(row);
  }
  return e;
}

DiagonalTwist deltaC(const LGPair& p, int c, int K) {
  if (!p.twistValid(c)) throw std::invalid_argument("twist needs c * c_j < d for every j");
  DiagonalTwist d{c, {}};
  for (int g = 0; g < p.group().size(); ++g) d.entries.push_back(deltaCEntry(p, c, g, K));
  return d;
}

DiagonalTwist conjugateByIC(const LGPair& p, int c, const DiagonalTwist& d) {
  const auto& G = p.group();
  DiagonalTwist r{c, std::vector<TwistEntry>(G.size())};
  // iC sends phi^0_g to phi^c_{g j^-c}; the diagonal entry travels with it.
  for (int g = 0; g < G.size(); ++g) r.entries[G.mul(g, G.gradingPow(-c))] = d.entries[g];
  return r;
}

RSeries evaluateTwistEntry(const TwistEntry& e, const std::vector<std::vector<Rational>>& s, int zOrder) {
  RSeries log(zOrder + 1, Rational(0));
  for (size_t j = 0; j < e.logCoeff.size(); ++j)
    for (size_t k = 0; k < e.logCoeff[j].size() && static_cast<int>(k + 1) <= zOrder; ++k)
      log[k + 1] += e.logCoeff[j][k] * s.at(j).at(k);
  return rseriesExp(log);
}

SpecializedTwistEntry specializeTwistEntry(const LGPair& p, const TwistEntry& e, Specialization spec, int wOrder) {
  SpecializedTwistEntry r;
  RSeries log(wOrder + 1, Rational(0));
  if (spec == Specialization::Untwisted) {
    log.assign(wOrder + 1, Rational(0));
    r.w = rseriesExp(log);
    return r;
  }
  for (size_t j = 0; j < e.logCoeff.size(); ++j) {
    Rational cj = p.fermat().weights[j];
    Rational base = spec == Specialization::EulerInverse ? Rational(-cj) : cj;
    // e^{s_0 B_1} = (base lambda)^{-B_1}
    if (e.s0Exponent[j] != 0) r.lambdaPowers.emplace_back(base, -e.s0Exponent[j]);
    Rational cpow = 1;
    for (size_t k = 0; k < e.logCoeff[j].size() && static_cast<int>(k + 1) <= wOrder; ++k) {
      cpow *= cj;
      // s_k z^k = (k-1)! (z/lambda)^k / c_j^k
      log[k + 1] += e.logCoeff[j][k] * factorial(static_cast<unsigned>(k)) / cpow;
    }
  }
  std::sort(r.lambdaPowers.begin(), r.lambdaPowers.end());
  r.w = rseriesExp(log);
  return r;
}

}  // namespace lgcy
