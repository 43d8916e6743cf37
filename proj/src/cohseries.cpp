#include "lgcy/cohseries.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lgcy {

using nlohmann::json;

std::string PrefactorToken::toString() const {
  std::ostringstream os;
  os << base << "^(";
  bool any = false;
  if (lam != 0) {
    os << lam.get_str() << "*lambda";
    any = true;
  }
  if (h != 0) {
    os << (any ? " + " : "") << h.get_str() << "*H";
    any = true;
  }
  if (!any) os << "0";
  os << ")";
  if (tauPow != 0) os << "*tau^" << tauPow;
  if (zPow != 0) os << "*z^" << zPow;
  return os.str();
}

std::string SeriesKey::toString() const {
  std::ostringstream os;
  os << "{sector " << sector << ", z^" << z << ", t^(";
  for (size_t i = 0; i < tdeg.size(); ++i) os << (i ? "," : "") << tdeg[i];
  os << ")}";
  return os.str();
}

int totalDegree(const std::vector<int>& tdeg) { return std::accumulate(tdeg.begin(), tdeg.end(), 0); }

std::vector<int> hBoundsFor(const LGPair& pair, Side side) {
  std::vector<int> b(pair.group().size(), 1);
  for (int g = 0; g < pair.group().size(); ++g) {
    if (side == Side::Y) b[g] = pair.fixedDim(g);
    if (side == Side::Z) b[g] = std::max(pair.fixedDim(g) - 1, 0);
  }
  return b;
}

CohSeries::CohSeries(Side side, unsigned cycloOrder, std::vector<int> hBounds, std::vector<Variable> vars, Orders orders,
                     int twist)
    : side_(side), twist_(twist), order_(cycloOrder), hBounds_(std::move(hBounds)), vars_(std::move(vars)), orders_(orders) {}

CohSeries CohSeries::emptyLike() const {
  CohSeries r(side_, order_, hBounds_, vars_, orders_, twist_);
  r.prefactor_ = prefactor_;
  return r;
}

CohSeries CohSeries::emptyLike(Side side, std::vector<int> hBounds) const {
  CohSeries r(side, order_, std::move(hBounds), vars_, orders_, twist_);
  r.prefactor_ = prefactor_;
  return r;
}

void CohSeries::add(const SeriesKey& k, const SectorValue& v) {
  if (v.isZero()) return;
  if (k.tdeg.size() != vars_.size()) throw std::invalid_argument("t-degree vector does not match the variables");
  Trunc t = truncFor(k.sector);
  SectorValue w = v.trunc() == t ? v : v.retruncated(t);
  if (w.isZero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, std::move(w));
    return;
  }
  it->second += w;
  if (it->second.isZero()) terms_.erase(it);
}

SectorValue CohSeries::coeff(const SeriesKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? SectorValue(truncFor(k.sector)) : it->second;
}

CohSeries& CohSeries::operator+=(const CohSeries& o) {
  if (o.side_ != side_ || !(o.vars_ == vars_)) throw std::invalid_argument("adding series of different shape");
  if (!(o.prefactor_ == prefactor_)) throw std::invalid_argument("adding series with different prefactor tokens");
  for (auto& [k, v] : o.terms_) add(k, v);
  return *this;
}

CohSeries CohSeries::operator-() const {
  CohSeries r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

CohSeries CohSeries::scaled(const Cyclotomic& c) const {
  CohSeries r = emptyLike();
  for (auto& [k, v] : terms_) r.add(k, v.scaled(c));
  return r;
}

CohSeries CohSeries::windowed(int zMin, int zMax, int T) const {
  CohSeries r = emptyLike();
  for (auto& [k, v] : terms_)
    if (k.z >= zMin && k.z <= zMax && totalDegree(k.tdeg) <= T) r.terms_.emplace(k, v);
  return r;
}

CohSeries CohSeries::restrictedToVariables(const std::vector<int>& keep) const {
  CohSeries r = emptyLike();
  for (auto& [k, v] : terms_) {
    bool ok = true;
    for (size_t i = 0; i < k.tdeg.size(); ++i)
      if (k.tdeg[i] != 0 && std::find(keep.begin(), keep.end(), static_cast<int>(i)) == keep.end()) ok = false;
    if (ok) r.terms_.emplace(k, v);
  }
  return r;
}

bool operator==(const CohSeries& a, const CohSeries& b) {
  return a.side_ == b.side_ && a.vars_ == b.vars_ && a.prefactor_ == b.prefactor_ && a.terms_ == b.terms_;
}

std::optional<SeriesKey> CohSeries::firstDifference(const CohSeries& o) const {
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) return i->first;
    if (i == terms_.end() || j->first < i->first) return j->first;
    if (!(i->second == j->second)) return i->first;
    ++i;
    ++j;
  }
  return std::nullopt;
}

std::string CohSeries::toString(const std::vector<std::string>* names) const {
  std::ostringstream os;
  os << "side " << sideName(side_);
  if (side_ == Side::LG) os << " c=" << twist_;
  os << ", variables [";
  for (size_t i = 0; i < vars_.size(); ++i) os << (i ? ", " : "") << vars_[i].name;
  os << "]";
  for (auto& p : prefactor_) os << ", prefactor " << p.toString();
  os << "\n";
  for (auto& [k, v] : terms_) {
    os << "  ";
    if (names) os << (*names)[k.sector];
    else os << "g" << k.sector;
    os << " z^" << k.z << " t^(";
    for (size_t i = 0; i < k.tdeg.size(); ++i) os << (i ? "," : "") << k.tdeg[i];
    os << "): " << v.toString() << "\n";
  }
  return os.str();
}

namespace {

json cycloJson(const Cyclotomic& c) {
  json a = json::array();
  for (auto& x : c.coeffs()) a.push_back(x.get_str());
  return a;
}

Cyclotomic cycloFrom(const json& j, unsigned order) {
  std::vector<Rational> p;
  for (auto& x : j) p.push_back(parseRational(x.get<std::string>()));
  return Cyclotomic::fromPowers(order, p);
}

json atomJson(const GammaAtom& a, int power) {
  return json{{"weight", a.weight.get_str()}, {"offset", a.offset.get_str()}, {"hWeight", a.hWeight.get_str()},
              {"tauScale", a.tauScale}, {"zScale", a.zScale}, {"power", power}};
}

json tokenJson(const PrefactorToken& p) {
  return json{{"base", p.base}, {"lambda", p.lam.get_str()}, {"H", p.h.get_str()}, {"tauPow", p.tauPow}, {"zPow", p.zPow},
              {"text", p.toString()}};
}

Side sideFrom(const std::string& s) {
  for (Side x : {Side::LG, Side::X, Side::Y, Side::Z, Side::FJRW})
    if (sideName(x) == s) return x;
  throw std::invalid_argument("unknown side: " + s);
}

}  // namespace

std::string CohSeries::toJson() const {
  json j;
  j["side"] = sideName(side_);
  j["c"] = twist_;
  j["cyclotomicOrder"] = order_;
  j["hBounds"] = hBounds_;
  j["orders"] = json{{"T", orders_.T}, {"lambda", orders_.lambda}, {"zWindow", {orders_.zMin, orders_.zMax}}};
  json vars = json::array();
  for (auto& v : vars_) vars.push_back(json{{"name", v.name}, {"sector", v.sector}});
  j["variables"] = vars;
  json pre = json::array();
  for (auto& p : prefactor_) pre.push_back(tokenJson(p));
  j["prefactor"] = pre;
  json terms = json::array();
  for (auto& [k, v] : terms_) {
    json mons = json::array();
    for (auto& [m, c] : v.terms()) {
      json atoms = json::array();
      for (auto& [a, p] : m.atoms) atoms.push_back(atomJson(a, p));
      mons.push_back(json{{"lambda", m.lam}, {"H", m.h}, {"tau", m.tau}, {"atoms", atoms}, {"coeff", cycloJson(c)}});
    }
    terms.push_back(json{{"sector", k.sector}, {"z", k.z}, {"t", k.tdeg}, {"text", v.toString()}, {"monomials", mons}});
  }
  j["terms"] = terms;
  return j.dump(1);
}

CohSeries CohSeries::fromJson(const std::string& text) {
  json j = json::parse(text);
  std::vector<Variable> vars;
  for (auto& v : j.at("variables")) vars.push_back(Variable{v.at("name").get<std::string>(), v.at("sector").get<int>()});
  const json& o = j.at("orders");
  Orders ord{o.at("T").get<int>(), o.at("lambda").get<int>(), o.at("zWindow")[0].get<int>(), o.at("zWindow")[1].get<int>()};
  CohSeries s(sideFrom(j.at("side").get<std::string>()), j.at("cyclotomicOrder").get<unsigned>(),
              j.at("hBounds").get<std::vector<int>>(), vars, ord, j.at("c").get<int>());
  for (auto& p : j.at("prefactor"))
    s.prefactor_.push_back(PrefactorToken{p.at("base").get<std::string>(), parseRational(p.at("lambda").get<std::string>()),
                                          parseRational(p.at("H").get<std::string>()), p.at("tauPow").get<int>(),
                                          p.at("zPow").get<int>()});
  for (auto& t : j.at("terms")) {
    SeriesKey k{t.at("sector").get<int>(), t.at("t").get<std::vector<int>>(), t.at("z").get<int>()};
    SectorValue v(s.truncFor(k.sector));
    for (auto& m : t.at("monomials")) {
      Monomial mon{m.at("lambda").get<int>(), m.at("H").get<int>(), m.at("tau").get<int>(), {}};
      AtomPowers atoms;
      for (auto& a : m.at("atoms")) {
        GammaAtom g{parseRational(a.at("weight").get<std::string>()), parseRational(a.at("offset").get<std::string>()),
                    parseRational(a.at("hWeight").get<std::string>()), a.at("tauScale").get<int>(), a.at("zScale").get<int>()};
        atoms = mergeAtoms(atoms, AtomPowers{{g, a.at("power").get<int>()}});
      }
      mon.atoms = atoms;
      v.addTerm(mon, cycloFrom(m.at("coeff"), s.order_));
    }
    s.add(k, v);
  }
  return s;
}

}  // namespace lgcy
