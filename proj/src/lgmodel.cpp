#include "lgcy/lgmodel.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace lgcy {

bool FermatData::isCalabiYau() const {
  return std::accumulate(weights.begin(), weights.end(), 0) == degree;
}

void FermatData::validate() const {
  if (weights.empty()) throw PairError("at least one variable is required");
  if (degree <= 0) throw PairError("degree must be positive");
  int g = 0;
  for (int c : weights) {
    if (c <= 0) throw PairError("weights must be positive");
    if (degree % c != 0) throw PairError("every weight must divide the degree");
    g = std::gcd(g, c);
  }
  if (g != 1) throw PairError("weights must have gcd 1");
  if (degree == 1) throw PairError("degree 1 gives the trivial group");
}

std::string GroupElement::toString() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
  os << ")";
  return os.str();
}

namespace {

GroupElement combine(const FermatData& f, const GroupElement& a, const GroupElement& b) {
  GroupElement r;
  r.exps.resize(f.n());
  for (int j = 0; j < f.n(); ++j) r.exps[j] = (a.exps[j] + b.exps[j]) % f.exponent(j);
  return r;
}

}  // namespace

AdmissibleGroup::AdmissibleGroup(const FermatData& f, const std::vector<GroupElement>& gens) : gens_(gens) {
  f.validate();
  GroupElement j{std::vector<int>(f.n(), 1)};
  for (int i = 0; i < f.n(); ++i) j.exps[i] %= f.exponent(i);
  std::vector<GroupElement> all = gens;
  all.push_back(j);
  for (auto& g : all) {
    if (static_cast<int>(g.exps.size()) != f.n()) throw PairError("generator has the wrong number of exponents");
    for (int i = 0; i < f.n(); ++i)
      if (g.exps[i] < 0 || g.exps[i] >= f.exponent(i)) throw PairError("generator exponent out of range: " + g.toString());
  }
  std::set<GroupElement> seen;
  std::deque<GroupElement> queue;
  GroupElement e{std::vector<int>(f.n(), 0)};
  seen.insert(e);
  queue.push_back(e);
  while (!queue.empty()) {
    GroupElement x = queue.front();
    queue.pop_front();
    for (auto& g : all) {
      GroupElement y = combine(f, x, g);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  elems_.assign(seen.begin(), seen.end());
  for (int i = 0; i < size(); ++i) index_[elems_[i]] = i;
  grading_ = index_.at(j);
  int n = size();
  mul_.resize(n * n);
  inv_.resize(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul_[a * n + b] = index_.at(combine(f, elems_[a], elems_[b]));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul_[a * n + b] == 0) inv_[a] = b;
}

int AdmissibleGroup::index(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw PairError("element not in group: " + g.toString());
  return it->second;
}

int AdmissibleGroup::pow(int a, long k) const {
  long ord = order(a);
  k = ((k % ord) + ord) % ord;
  int r = identity();
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int AdmissibleGroup::order(int a) const {
  int k = 1;
  for (int x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

AdmissibleGroup groupFromGenerators(const FermatData& f, const std::vector<GroupElement>& gens) {
  return AdmissibleGroup(f, gens);
}

std::string sideName(Side s) {
  switch (s) {
    case Side::LG: return "lg";
    case Side::X: return "x";
    case Side::Y: return "y";
    case Side::Z: return "z";
    case Side::FJRW: return "fjrw";
  }
  return "?";
}

std::string LambdaMonomial::toString() const {
  if (coeff == 0) return "0";
  std::string s = coeff.get_str();
  if (lamExp != 0) s += "*lambda^" + std::to_string(lamExp);
  return s;
}

LGPair::LGPair(std::string name, FermatData f, const std::vector<GroupElement>& gens)
    : name_(std::move(name)), f_(std::move(f)), g_(f_, gens) {
  int G = g_.size();
  dbar_ = 1;
  for (int a = 0; a < G; ++a) dbar_ = std::lcm(dbar_, g_.order(a));
  fixed_.resize(G);
  narrow_.resize(G);
  for (int a = 0; a < G; ++a) {
    int cnt = 0;
    for (int j = 0; j < n(); ++j) cnt += g_.element(a).exps[j] == 0;
    fixed_[a] = cnt;
    if (!isIntegral(age(a))) sl_ = false;
  }
  for (int a = 0; a < G; ++a) {
    narrow_[a] = fixed_[g_.mul(a, g_.grading())] == 0;
    if (narrow_[a]) narrowList_.push_back(a);
    if (fixed_[a] > 0) noncompact_.push_back(a);
  }
}

Rational LGPair::multiplicity(int g, int j) const {
  return makeRational(static_cast<long>(g_.element(g).exps[j]) * f_.weights[j], f_.degree);
}

Rational LGPair::age(int g) const {
  Rational s = 0;
  for (int j = 0; j < n(); ++j) s += multiplicity(g, j);
  return s;
}

int LGPair::maxTwist() const {
  int cmax = *std::max_element(f_.weights.begin(), f_.weights.end());
  return (f_.degree - 1) / cmax;
}

std::string LGPair::sectorName(int g) const {
  for (int k = 0; k < g_.order(g_.grading()); ++k)
    if (g_.gradingPow(k) == g) return k == 0 ? "e" : (k == 1 ? "j" : "j^" + std::to_string(k));
  return g_.element(g).toString();
}

Rational LGPair::lineBundleDegree(int c, int j, int genus, const std::vector<int>& insertions) const {
  int n = static_cast<int>(insertions.size());
  Rational r = makeRational(static_cast<long>(c) * f_.weights[j], f_.degree) * (2 * genus - 2 + n);
  for (int g : insertions) r -= multiplicity(g, j);
  return r;
}

bool LGPair::isNonempty(int c, int genus, const std::vector<int>& insertions) const {
  if (insertions.empty()) throw std::invalid_argument("isNonempty needs at least one insertion");
  for (int j = 0; j < n(); ++j)
    if (!isIntegral(lineBundleDegree(c, j, genus, insertions))) return false;
  return true;
}

LambdaMonomial LGPair::pairTwisted(int c, int g1, int g2, Specialization spec) const {
  if (!twistValid(c)) throw std::invalid_argument("pairing needs c * c_j < d for every j");
  LambdaMonomial r{Rational(0), 0};
  int target = g_.inv(g_.gradingPow(2L * c));
  if (g_.mul(g1, g2) != target) return r;
  Rational v = 1;
  for (int j = 0; j < n(); ++j) v /= dbar_;
  int shifted = g_.mul(g1, g_.gradingPow(c));
  for (int j = 0; j < n(); ++j) {
    if (multiplicity(shifted, j) != 0) continue;
    // floor(1 - m_j) = 1: one factor exp(s_0^j) with s_0^j specialized
    if (spec == Specialization::EulerInverse) {
      v /= -f_.weights[j];
      r.lamExp -= 1;
    } else if (spec == Specialization::EulerInverseSigned) {
      v /= f_.weights[j];
      r.lamExp -= 1;
    }
  }
  r.coeff = v;
  return r;
}

void LGPair::requireCalabiYau() const {
  if (!isCalabiYau()) throw PairError("pair is not Calabi-Yau (sum of weights differs from degree)");
}

void LGPair::requireSL() const {
  if (!sl_) throw PairError("group is not contained in SL (some element has non-integral age)");
}

void LGPair::requirePeriodIsDegree() const {
  if (dbar_ != f_.degree) throw PairError("group period differs from the degree; orbifold formulas need them equal");
}

LGPair parsePair(const std::string& text, const std::string& fallbackName) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PairError(std::string("malformed pair file: ") + e.what());
  }
  try {
    FermatData f;
    f.weights = j.at("weights").get<std::vector<int>>();
    f.degree = j.at("degree").get<int>();
    std::vector<GroupElement> gens;
    if (j.contains("generators"))
      for (auto& g : j.at("generators")) gens.push_back(GroupElement{g.get<std::vector<int>>()});
    std::string name = j.value("name", fallbackName);
    return LGPair(name, f, gens);
  } catch (const nlohmann::json::exception& e) {
    throw PairError(std::string("invalid pair record: ") + e.what());
  }
}

LGPair loadPair(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PairError("cannot open pair file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parsePair(ss.str(), stem);
}

std::string shippedPairPath(const std::string& file) {
#ifdef LGCY_PAIR_DIR
  return std::string(LGCY_PAIR_DIR) + "/" + file;
#else
  return "pairs/" + file;
#endif
}

}  // namespace lgcy
