#include "lgcy/sector_value.hpp"

#include <algorithm>
#include <sstream>

namespace lgcy {

std::string GammaAtom::toString() const {
  std::ostringstream os;
  os << "Gamma(1 - ";
  if (hWeight == 0 && tauScale == -1 && zScale == 0) {
    os << weight.get_str() << "*beta";
  } else {
    os << "(" << weight.get_str() << "*lambda";
    if (hWeight != 0) os << " + " << hWeight.get_str() << "*H";
    os << ")";
    if (tauScale != 0) os << "*tau^" << tauScale;
    if (zScale != 0) os << "*z^" << zScale;
  }
  os << " - " << offset.get_str() << ")";
  return os.str();
}

AtomPowers mergeAtoms(const AtomPowers& a, const AtomPowers& b) {
  AtomPowers r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      int p = a[i].second + b[j].second;
      if (p != 0) r.emplace_back(a[i].first, p);
      ++i;
      ++j;
    }
  }
  return r;
}

SectorValue SectorValue::constant(const Trunc& t, const Cyclotomic& c) {
  SectorValue v(t);
  v.addTerm(Monomial{}, c);
  return v;
}

SectorValue SectorValue::constant(const Trunc& t, const Rational& r) {
  return constant(t, Cyclotomic(t.order, r));
}

SectorValue SectorValue::lambda(const Trunc& t) {
  SectorValue v(t);
  v.addTerm(Monomial{1, 0, 0, {}}, Cyclotomic(t.order, 1));
  return v;
}

SectorValue SectorValue::hyperplane(const Trunc& t) {
  SectorValue v(t);
  v.addTerm(Monomial{0, 1, 0, {}}, Cyclotomic(t.order, 1));
  return v;
}

void SectorValue::addTerm(const Monomial& m, const Cyclotomic& c) {
  if (m.lam < 0) throw std::domain_error("negative lambda power in a series coefficient");
  if (m.h < 0) throw std::domain_error("negative H power");
  if (c.order() != t_.order) throw std::invalid_argument("cyclotomic order mismatch");
  if (m.lam > t_.lambdaMax || m.h >= t_.hBound || c.isZero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.isZero()) terms_.erase(it);
}

SectorValue SectorValue::operator-() const {
  SectorValue r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

static void checkCompatible(const Trunc& a, const Trunc& b) {
  if (a.order != b.order) throw std::invalid_argument("cyclotomic order mismatch");
  if (a.hBound != b.hBound) throw std::invalid_argument("H nilpotency bound mismatch");
}

SectorValue& SectorValue::operator+=(const SectorValue& o) {
  checkCompatible(t_, o.t_);
  if (o.t_.lambdaMax < t_.lambdaMax) *this = retruncated(o.t_);
  for (auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

SectorValue& SectorValue::operator-=(const SectorValue& o) { return *this += -o; }

SectorValue operator*(const SectorValue& a, const SectorValue& b) {
  checkCompatible(a.t_, b.t_);
  Trunc t = a.t_;
  t.lambdaMax = std::min(a.t_.lambdaMax, b.t_.lambdaMax);
  SectorValue r(t);
  for (auto& [ma, ca] : a.terms_) {
    for (auto& [mb, cb] : b.terms_) {
      int lam = ma.lam + mb.lam, h = ma.h + mb.h;
      if (lam > t.lambdaMax || h >= t.hBound) continue;
      Monomial m{lam, h, ma.tau + mb.tau,
                 mb.atoms.empty() ? ma.atoms : (ma.atoms.empty() ? mb.atoms : mergeAtoms(ma.atoms, mb.atoms))};
      r.addTerm(m, ca * cb);
    }
  }
  return r;
}

SectorValue SectorValue::scaled(const Cyclotomic& c) const {
  SectorValue r(t_);
  if (c.isZero()) return r;
  for (auto& [m, x] : terms_) r.addTerm(m, x * c);
  return r;
}

SectorValue SectorValue::scaled(const Rational& q) const {
  SectorValue r(t_);
  if (q == 0) return r;
  for (auto& [m, x] : terms_) r.terms_.emplace(m, x * q);
  return r;
}

SectorValue SectorValue::timesTau(int k) const {
  SectorValue r(t_);
  for (auto& [m, x] : terms_) {
    Monomial n = m;
    n.tau += k;
    r.terms_.emplace(n, x);
  }
  return r;
}

SectorValue SectorValue::timesAtom(const GammaAtom& a, int power) const {
  if (power == 0) return *this;
  SectorValue r(t_);
  AtomPowers single{{a, power}};
  for (auto& [m, x] : terms_) {
    Monomial n = m;
    n.atoms = mergeAtoms(m.atoms, single);
    r.addTerm(n, x);
  }
  return r;
}

bool SectorValue::agreesWith(const SectorValue& o) const {
  if (t_.order != o.t_.order || t_.hBound != o.t_.hBound) return false;
  int lm = std::min(t_.lambdaMax, o.t_.lambdaMax);
  Trunc t = t_;
  t.lambdaMax = lm;
  return retruncated(t).terms_ == o.retruncated(t).terms_;
}

SectorValue SectorValue::retruncated(const Trunc& t) const {
  if (t.order != t_.order) throw std::invalid_argument("cyclotomic order mismatch");
  SectorValue r(t);
  for (auto& [m, x] : terms_) r.addTerm(m, x);
  return r;
}

int SectorValue::lambdaValuation() const {
  int v = INT_MAX;
  for (auto& [m, x] : terms_) v = std::min(v, m.lam);
  return v;
}

SectorValue SectorValue::atLambdaZero() const {
  SectorValue r(t_);
  for (auto& [m, x] : terms_)
    if (m.lam == 0) r.terms_.emplace(m, x);
  return r;
}

bool SectorValue::isPlain() const {
  for (auto& [m, x] : terms_)
    if (m.tau != 0 || !m.atoms.empty()) return false;
  return true;
}

Cyclotomic SectorValue::constantTerm() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Cyclotomic(t_.order) : it->second;
}

std::string SectorValue::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, x] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << x.toString() << ")";
    if (m.lam) os << "*lambda" << (m.lam > 1 ? "^" + std::to_string(m.lam) : "");
    if (m.h) os << "*H" << (m.h > 1 ? "^" + std::to_string(m.h) : "");
    if (m.tau) os << "*tau^" << m.tau;
    for (auto& [a, p] : m.atoms) {
      os << "*" << a.toString();
      if (p != 1) os << "^" << p;
    }
  }
  return os.str();
}

static bool isNilpotentMonomial(const Monomial& m) { return m.lam > 0 || m.h > 0; }

SectorValue seriesPow(const SectorValue& x, unsigned k) {
  SectorValue r = SectorValue::constant(x.trunc(), Rational(1));
  SectorValue base = x;
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

SectorValue seriesExp(const SectorValue& x) {
  for (auto& [m, c] : x.terms())
    if (!isNilpotentMonomial(m)) throw std::domain_error("seriesExp: argument has a nonzero constant term");
  SectorValue result = SectorValue::constant(x.trunc(), Rational(1));
  SectorValue power = result;
  for (unsigned n = 1;; ++n) {
    power = (power * x).scaled(Rational(1, n));
    if (power.isZero()) break;
    result += power;
  }
  return result;
}

SectorValue seriesInvert(const SectorValue& x) {
  Cyclotomic c0 = x.constantTerm();
  for (auto& [m, c] : x.terms())
    if (!isNilpotentMonomial(m) && !(m == Monomial{}))
      throw NonUnitError("seriesInvert: constant part carries tau or Gamma atoms");
  if (c0.isZero()) throw NonUnitError("seriesInvert: zero constant term");
  Cyclotomic inv0 = c0.inverse();
  // x = c0 (1 + u), 1/x = inv0 * sum (-u)^k
  SectorValue u = x.scaled(inv0) - SectorValue::constant(x.trunc(), Rational(1));
  SectorValue negU = -u;
  SectorValue result = SectorValue::constant(x.trunc(), Rational(1));
  SectorValue power = result;
  while (true) {
    power *= negU;
    if (power.isZero()) break;
    result += power;
  }
  return result.scaled(inv0);
}

std::optional<SectorValue> divideByLambdaPlusH(const SectorValue& x) {
  const Trunc& t = x.trunc();
  Trunc out = t;
  out.lambdaMax = t.lambdaMax - t.hBound;
  if (t.hBound == 0) return SectorValue(out);
  if (out.lambdaMax < 0) throw std::domain_error("divideByLambdaPlusH: lambda order below the H nilpotency bound");

  // Group by the (tau, atoms) part; within a group solve f_i = lambda q_i + q_{i-1} degree by degree in H.
  std::map<std::pair<int, AtomPowers>, std::vector<std::vector<Cyclotomic>>> groups;
  auto blank = [&] {
    return std::vector<std::vector<Cyclotomic>>(t.hBound, std::vector<Cyclotomic>(t.lambdaMax + 1, Cyclotomic(t.order)));
  };
  for (auto& [m, c] : x.terms()) {
    auto key = std::make_pair(m.tau, m.atoms);
    auto it = groups.find(key);
    if (it == groups.end()) it = groups.emplace(key, blank()).first;
    it->second[m.h][m.lam] = c;
  }
  SectorValue q(out);
  for (auto& [key, f] : groups) {
    std::vector<Cyclotomic> prev;  // q_{i-1}
    for (int i = 0; i < t.hBound; ++i) {
      int known = t.lambdaMax - i;  // g_i known through lambda^known
      std::vector<Cyclotomic> g(known + 1, Cyclotomic(t.order));
      for (int k = 0; k <= known; ++k) {
        g[k] = f[i][k];
        if (i > 0) g[k] -= prev[k];
      }
      if (!g[0].isZero()) return std::nullopt;
      std::vector<Cyclotomic> qi(known, Cyclotomic(t.order));
      for (int k = 0; k < known; ++k) qi[k] = g[k + 1];
      for (int k = 0; k < known && k <= out.lambdaMax; ++k)
        q.addTerm(Monomial{k, i, key.first, key.second}, qi[k]);
      prev = std::move(qi);
    }
  }
  return q;
}

}  // namespace lgcy
