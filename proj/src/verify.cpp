#include "lgcy/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace lgcy {

using nlohmann::json;

std::string VerificationReport::toJson() const {
  json j{{"check", check},
         {"pair", pair},
         {"orders", {{"T", orders.T}, {"lambda", orders.lambda}, {"zWindow", {orders.zMin, orders.zMax}}}},
         {"status", passed ? "pass" : "fail"},
         {"elapsedMs", elapsedMs}};
  if (witness) j["witness"] = json{{"key", witness->key}, {"lhs", witness->lhs}, {"rhs", witness->rhs}};
  if (!detail.empty()) j["detail"] = detail;
  return j.dump();
}

std::string VerificationReport::toTableRow() const {
  std::ostringstream os;
  os << std::left << std::setw(22) << check << std::setw(12) << pair << std::setw(6) << (passed ? "pass" : "FAIL")
     << "T=" << orders.T << " lambda=" << orders.lambda << " " << std::fixed << std::setprecision(1) << elapsedMs << "ms";
  if (!detail.empty()) os << "  " << detail;
  if (witness) os << "\n    witness " << witness->key << "\n    lhs " << witness->lhs << "\n    rhs " << witness->rhs;
  return os.str();
}

namespace {

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

int maxFixedDim(const LGPair& p) {
  int m = 0;
  for (int g = 0; g < p.group().size(); ++g) m = std::max(m, p.fixedDim(g));
  return m;
}

Orders ordersFrom(const CheckOptions& opt, int T, int lambda) {
  Orders o = Orders::make(opt.T.value_or(T), opt.lambda.value_or(lambda));
  if (opt.zMin) o.zMin = *opt.zMin;
  if (opt.zMax) o.zMax = *opt.zMax;
  if (o.T < 0 || o.lambda < 0) throw std::invalid_argument("truncation orders must be nonnegative");
  return o;
}

void fail(VerificationReport& r, std::string key, std::string lhs, std::string rhs) {
  if (r.witness) return;
  r.passed = false;
  r.witness = Witness{std::move(key), std::move(lhs), std::move(rhs)};
}

// Adds 1 to one coefficient chosen among the keys accepted by `pred`.
void corruptOne(CohSeries& s, FaultInjection* f, const std::function<bool(const SeriesKey&)>& pred,
                const std::string& prefix) {
  if (!f) return;
  std::vector<SeriesKey> keys;
  for (auto& [k, v] : s.terms())
    if (pred(k)) keys.push_back(k);
  if (keys.empty()) throw std::logic_error("no coefficient available for fault injection");
  std::mt19937 rng(f->seed);
  const SeriesKey& k = keys[rng() % keys.size()];
  s.add(k, SectorValue::constant(s.truncFor(k.sector), Rational(1)));
  f->injectedKey = prefix + k.toString();
}

bool anyKey(const SeriesKey&) { return true; }

void compareSeries(VerificationReport& r, const CohSeries& lhs, const CohSeries& rhs, const std::string& prefix) {
  if (!(lhs.prefactor() == rhs.prefactor())) {
    std::string a, b;
    for (auto& x : lhs.prefactor()) a += x.toString() + " ";
    for (auto& x : rhs.prefactor()) b += x.toString() + " ";
    fail(r, prefix + "prefactor", a, b);
    return;
  }
  if (auto k = lhs.firstDifference(rhs)) fail(r, prefix + k->toString(), lhs.coeff(*k).toString(), rhs.coeff(*k).toString());
}

using Body = std::function<void(VerificationReport&)>;

VerificationReport guarded(const std::string& check, const LGPair& p, const Orders& o, const Body& body) {
  VerificationReport r;
  r.check = check;
  r.pair = p.name();
  r.orders = o;
  r.passed = true;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const IdentityFailure& e) {
    fail(r, e.key.toString(), e.lhs, e.rhs);
    r.detail += std::string(" ") + e.what();
  } catch (const std::exception& e) {
    fail(r, "exception", e.what(), "");
  }
  r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

VerificationReport checkOracle(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 5, 0);
  return guarded("oracle", p, o, [&](VerificationReport& r) {
    const auto& G = p.group();
    Rational norm = 1;
    for (int j = 0; j < p.n(); ++j) norm /= p.dbar();
    long compared = 0, nonzero = 0;
    for (int c = 0; c <= p.maxTwist(); ++c) {
      CohSeries J = untwistedJ(p, c, o);
      if (c == 0) corruptOne(J, fault, [](const SeriesKey& k) { return totalDegree(k.tdeg) >= 2; }, "c=0 ");
      int jc = G.gradingPow(c);
      int dualShift = G.gradingPow(-2L * c);
      forEachTuple(G.size(), o.T, [&](const std::vector<int>& a) {
        int k = totalDegree(a);
        if (k < 2 || r.witness) return;
        std::vector<int> ins;
        Rational mult = 1;
        for (int g = 0; g < G.size(); ++g) {
          mult *= factorial(static_cast<unsigned>(a[g]));
          for (int i = 0; i < a[g]; ++i) ins.push_back(G.mul(g, jc));
        }
        for (int g0 = 0; g0 < G.size(); ++g0) {
          std::vector<int> marked{G.mul(g0, jc)};
          marked.insert(marked.end(), ins.begin(), ins.end());
          bool nonempty = p.isNonempty(c, 0, marked);
          SeriesKey key{G.mul(G.inv(g0), dualShift), a, 0};
          for (int psi = 0; psi < k; ++psi) {
            key.z = -1 - psi;
            SectorValue v = J.coeff(key);
            Cyclotomic cv = v.constantTerm();
            std::vector<int> ex(k + 1, 0);
            ex[0] = psi;
            Rational want = nonempty ? Rational(psiIntegralOracle(ex) * norm) : Rational(0);
            bool ok = v.isPlain() && v == SectorValue::constant(v.trunc(), cv) && cv.isRational();
            Rational got = ok ? Rational(cv.rationalPart() * mult * norm) : Rational(-1);
            ++compared;
            if (want != 0) ++nonzero;
            if (!ok || got != want) {
              fail(r, "c=" + std::to_string(c) + " " + key.toString(), got.get_str(), want.get_str());
              return;
            }
          }
        }
      });
      if (r.witness) return;
    }
    r.detail = std::to_string(compared) + " correlators, " + std::to_string(nonzero) + " nonzero";
  });
}

VerificationReport checkMlkOperator(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  const int K = 4, zOrder = 6;
  Orders o = ordersFrom(opt, zOrder, 0);
  return guarded("mlk-operator", p, o, [&](VerificationReport& r) {
    const auto& G = p.group();
    DiagonalTwist d0 = deltaC(p, 0, K);
    std::optional<std::pair<int, int>> target;
    if (fault) {
      std::mt19937 rng(fault->seed);
      int total = (p.maxTwist() + 1) * G.size();
      int pick = static_cast<int>(rng() % total);
      target = std::make_pair(pick / G.size(), pick % G.size());
      fault->injectedKey = "c=" + std::to_string(target->first) + " sector=" + p.sectorName(target->second);
    }
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    std::vector<std::vector<Rational>> s(p.n(), std::vector<Rational>(K));
    for (auto& row : s)
      for (auto& x : row) x = makeRational(num(rng), den(rng));
    for (int c = 0; c <= p.maxTwist(); ++c) {
      DiagonalTwist lhs = conjugateByIC(p, c, d0);
      DiagonalTwist rhs = deltaC(p, c, K);
      if (target && target->first == c) rhs.entries[target->second].logCoeff[0][0] += 1;
      for (int g = 0; g < G.size(); ++g) {
        const TwistEntry& a = lhs.entries[g];
        const TwistEntry& b = rhs.entries[g];
        std::string key = "c=" + std::to_string(c) + " sector=" + p.sectorName(g);
        if (!(a == b)) return fail(r, key, a.toString(), b.toString());
        if (evaluateTwistEntry(a, s, zOrder) != evaluateTwistEntry(b, s, zOrder))
          return fail(r, key + " evaluated", a.toString(), b.toString());
        for (auto spec : {Specialization::EulerInverse, Specialization::EulerInverseSigned})
          if (!(specializeTwistEntry(p, a, spec, K) == specializeTwistEntry(p, b, spec, K)))
            return fail(r, key + " specialized", a.toString(), b.toString());
      }
    }
    r.detail = "generic s to k=" + std::to_string(K) + ", evaluated to z^" + std::to_string(zOrder);
  });
}

VerificationReport checkMlkUntwisted(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 6, 0);
  return guarded("mlk-untwisted", p, o, [&](VerificationReport& r) {
    const auto& G = p.group();
    CohSeries oracle = oracleJ(p, 0, o);
    bool corrupted = false;
    int comparisons = 0;
    for (int c = 0; c <= p.maxTwist(); ++c) {
      CohSeries closed = untwistedJ(p, c, o);
      Transform ic = iC(p, c);
      for (int gp = 0; gp < G.size(); ++gp) {
        int shifted = G.mul(G.gradingPow(c), gp);
        CohSeries lhs = ic.apply(tDerivative(oracle, shifted, PrefactorMode::Strip)).windowed(o.zMin, o.zMax, o.T - 1);
        CohSeries rhs = tDerivative(closed, gp, PrefactorMode::Strip).windowed(o.zMin, o.zMax, o.T - 1);
        std::string prefix = "c=" + std::to_string(c) + " g'=" + p.sectorName(gp) + " ";
        if (!corrupted) {
          corruptOne(lhs, fault, anyKey, prefix);
          corrupted = true;
        }
        compareSeries(r, lhs, rhs, prefix);
        ++comparisons;
        if (r.witness) return;
      }
    }
    r.detail = std::to_string(comparisons) + " derivative directions";
  });
}

VerificationReport checkFactorization(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 10, 3);
  return guarded("factorization", p, o, [&](VerificationReport& r) {
    CohSeries ix = iFunctionX(p, o).windowed();
    corruptOne(ix, fault, anyKey, "");
    hFactorization(p, ix, Side::X);
    std::vector<SeriesKey> flagged;
    CohSeries iy = iFunctionY(p, o, EmptyRangeConvention::GammaConsistent, &flagged);
    hFactorization(p, iy, Side::Y);
    r.detail = "x terms " + std::to_string(ix.size()) + ", y terms " + std::to_string(iy.size()) + ", " +
               std::to_string(flagged.size()) + " y terms differ under the empty-product reading";
  });
}

VerificationReport checkContinuation(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 10, 3);
  return guarded("continuation", p, o, [&](VerificationReport& r) {
    CohSeries lhs = uBar(p, o.lambda).apply(hFunctionX(p, o)).windowed();
    CohSeries rhs = hContinued(p, o).windowed();
    corruptOne(lhs, fault, anyKey, "");
    compareSeries(r, lhs, rhs, "");
    if (r.witness) return;
    // U(I^X) against z^{1-Gr} Gamma(Y) tau^{deg0/2} applied to the continued H
    CohSeries uix = bigU(p, o.lambda).apply(iFunctionX(p, o)).windowed();
    CohSeries back = reconstructionOp(p, Side::Y, o.lambda).apply(hContinued(p, o)).windowed();
    compareSeries(r, uix, back, "U(I^X) ");
    r.detail = std::to_string(lhs.size()) + " coefficients";
  });
}

int compactBlockRank(const LGPair& p, int* rows) {
  const auto& G = p.group();
  const int d = p.degree();
  std::vector<std::pair<int, int>> cols;
  for (int h = 0; h < G.size(); ++h)
    for (int k = 0; k < p.fixedDim(h); ++k) cols.emplace_back(h, k);
  std::vector<std::vector<Cyclotomic>> m;
  for (int g = 0; g < G.size(); ++g) {
    if (p.fixedDim(g) != 0) continue;
    std::vector<Cyclotomic> row(cols.size(), Cyclotomic(static_cast<unsigned>(d)));
    for (int b = 0; b < d; ++b) {
      int out = G.mul(g, G.gradingPow(-b));
      int n = p.fixedDim(out);
      if (n == 0) continue;
      SectorValue e = uBarEntry(p, b, Trunc{static_cast<unsigned>(d), n, n}, UBarRoute::GeometricSum).atLambdaZero();
      for (auto& [mon, c] : e.terms()) {
        auto it = std::find(cols.begin(), cols.end(), std::make_pair(out, mon.h));
        row[it - cols.begin()] += c;
      }
    }
    m.push_back(row);
  }
  if (rows) *rows = static_cast<int>(m.size());
  return rankOverCyclotomic(m);
}

VerificationReport checkRctcConditions(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 0, 6);
  return guarded("rctc", p, o, [&](VerificationReport& r) {
    p.requireCalabiYau();
    p.requirePeriodIsDegree();
    const int d = p.degree();
    std::set<int> bounds;
    for (int g : p.noncompactSectors()) bounds.insert(p.fixedDim(g));
    std::vector<std::pair<int, int>> blocks;
    for (int b = 0; b < d; ++b)
      for (int n : bounds) blocks.emplace_back(b, n);
    int target = -1;
    if (fault) {
      std::mt19937 rng(fault->seed);
      target = static_cast<int>(rng() % blocks.size());
      fault->injectedKey = "b=" + std::to_string(blocks[target].first) + " N=" + std::to_string(blocks[target].second);
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
      auto [b, n] = blocks[i];
      Trunc t{static_cast<unsigned>(d), o.lambda, n};
      SectorValue geo = uBarEntry(p, b, t, UBarRoute::GeometricSum);
      SectorValue quo = uBarEntry(p, b, t, UBarRoute::Quotient);
      if (static_cast<int>(i) == target) geo += SectorValue::constant(t, Rational(1));
      std::string key = "b=" + std::to_string(b) + " N=" + std::to_string(n);
      if (!geo.isPlain()) return fail(r, key, geo.toString(), "plain series in lambda and H");
      if (geo != quo) return fail(r, key, geo.toString(), quo.toString());
      if (b != 0) {
        if (!divideByLambdaPlusH(geo)) return fail(r, key, geo.toString(), "divisible by (lambda + H)");
        SectorValue atRoot = lambdaToMinusH(geo);
        if (!atRoot.isZero()) return fail(r, key, atRoot.toString(), "0 at lambda = -H");
      }
    }
    int rows = 0;
    int rank = compactBlockRank(p, &rows);
    if (rank != rows) return fail(r, "compact block", std::to_string(rank), std::to_string(rows));
    r.detail = "compact block rank " + std::to_string(rank) + " of " + std::to_string(rows);
  });
}

VerificationReport checkFjrwPipeline(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 10, maxFixedDim(p) + 1);
  return guarded("fjrw", p, o, [&](VerificationReport& r) {
    p.requireSL();
    const auto& G = p.group();
    CohSeries dx = tDerivative(iFunctionX(p, o), 0, PrefactorMode::Strip);
    corruptOne(dx, fault, [&](const SeriesKey& k) { return p.fixedDim(k.sector) > 0; }, "");
    // (a) lambda^{N_g} divisibility
    if (auto k = lambdaDivisibilityWitness(p, dx))
      return fail(r, k->toString(), dx.coeff(*k).toString(), "divisible by lambda^" + std::to_string(p.fixedDim(k->sector)));
    // (b) the limit lives on compact sectors and lands on narrow ones
    CohSeries lim = lambdaLimit(dx);
    for (auto& [k, v] : lim.terms())
      if (p.fixedDim(k.sector) > 0) return fail(r, k.toString(), v.toString(), "0");
    CohSeries f = deltaCirc(p, opt.circSign).apply(lim);
    for (auto& [k, v] : f.terms())
      if (!p.isNarrow(k.sector)) return fail(r, k.toString(), v.toString(), "0 off the narrow sectors");
    if (f.size() != lim.size()) return fail(r, "support", std::to_string(f.size()), std::to_string(lim.size()));
    CohSeries direct = fjrwIFunction(p, o, opt.circSign);
    if (auto k = f.firstDifference(direct)) return fail(r, k->toString(), f.coeff(*k).toString(), direct.coeff(*k).toString());
    // (c) leading term and the shape of the primary restriction
    int lead = opt.circSign == CircSign::SectorAge ? G.grading() : G.gradingPow(2);
    long sign = p.age(lead).get_num().get_si() % 2 ? -1 : 1;
    SeriesKey unitKey{G.identity(), std::vector<int>(f.variables().size(), 0), 1};
    SectorValue unit = f.coeff(unitKey);
    SectorValue want = SectorValue::constant(unit.trunc(), Rational(sign));
    if (unit != want) return fail(r, unitKey.toString(), unit.toString(), want.toString());
    CohSeries primary = f.restrictedToVariables({0});
    for (auto& [k, v] : primary.terms())
      if (k.z >= 2 || (k.z == 1 && k.sector != G.identity()))
        return fail(r, k.toString(), v.toString(), "no z^1 term off the unit and no z^>=2 term");
    r.detail = std::to_string(f.size()) + " narrow coefficients, unit sign " + std::to_string(sign);
  });
}

VerificationReport checkKernelCompatibility(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 8, maxFixedDim(p) + 1);
  return guarded("kernel", p, o, [&](VerificationReport& r) {
    p.requireSL();
    CohSeries dx = tDerivative(iFunctionX(p, o), 0, PrefactorMode::Strip);
    Transform ubar = uBar(p, o.lambda);
    Transform diamond = deltaDiamond(p, o.lambda);
    try {
      diamond.apply(ubar.apply(dx));
    } catch (const NonDivisibleError& e) {
      return fail(r, e.key.toString(), "not divisible by (lambda + H)", "divisible");
    }
    CohSeries noncompact = dx.emptyLike();
    for (auto& [k, v] : dx.terms())
      if (p.fixedDim(k.sector) > 0) noncompact.add(k, v);
    CohSeries lim = lambdaLimit(diamond.apply(ubar.apply(noncompact)));
    corruptOne(lim, fault, [&](const SeriesKey& k) { return p.fixedDim(k.sector) >= 2; }, "");
    long survivors = 0;
    for (auto& [k, v] : lim.terms()) {
      int top = p.fixedDim(k.sector) - 1;
      for (auto& [m, c] : v.terms()) {
        ++survivors;
        if (m.h != top) return fail(r, k.toString(), v.toString(), "multiple of H^" + std::to_string(top));
      }
    }
    CohSeries z = pullbackToZ(p).apply(lim);
    if (!z.isZero()) {
      auto k = z.terms().begin()->first;
      return fail(r, k.toString(), z.coeff(k).toString(), "0");
    }
    r.detail = std::to_string(survivors) + " surviving monomials, all in the kernel";
  });
}

VerificationReport checkResidues(const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  Orders o = ordersFrom(opt, 6, 0);
  return guarded("residue", p, o, [&](VerificationReport& r) {
    const int d = p.degree();
    int target = -1;
    int count = (o.T + 1) * d;
    if (fault) {
      std::mt19937 rng(fault->seed);
      target = static_cast<int>(rng() % count);
      fault->injectedKey = "m=" + std::to_string(target / d) + " b=" + std::to_string(target % d) + " d=" + std::to_string(d);
    }
    for (int m = 0; m <= o.T; ++m)
      for (int b = 0; b < d; ++b) {
        Rational v = gammaResidue(m, b, d);
        if (m * d + b == target) v += 1;
        Rational want = (m % 2 ? Rational(-1) : Rational(1)) / (factorial(static_cast<unsigned>(m)) * d);
        std::string key = "m=" + std::to_string(m) + " b=" + std::to_string(b) + " d=" + std::to_string(d);
        if (v != want || !residueUnitCheck(m, b, d)) return fail(r, key, v.get_str(), want.get_str());
      }
    r.detail = std::to_string(count) + " residues";
  });
}

const std::vector<std::string>& checkNames() {
  static const std::vector<std::string> names{"oracle",       "mlk-operator", "mlk-untwisted", "factorization", "continuation",
                                              "rctc",         "fjrw",         "kernel",        "residue"};
  return names;
}

VerificationReport runCheck(const std::string& name, const LGPair& p, const CheckOptions& opt, FaultInjection* fault) {
  if (name == "oracle") return checkOracle(p, opt, fault);
  if (name == "mlk-operator") return checkMlkOperator(p, opt, fault);
  if (name == "mlk-untwisted") return checkMlkUntwisted(p, opt, fault);
  if (name == "factorization") return checkFactorization(p, opt, fault);
  if (name == "continuation") return checkContinuation(p, opt, fault);
  if (name == "rctc") return checkRctcConditions(p, opt, fault);
  if (name == "fjrw") return checkFjrwPipeline(p, opt, fault);
  if (name == "kernel") return checkKernelCompatibility(p, opt, fault);
  if (name == "residue") return checkResidues(p, opt, fault);
  throw std::invalid_argument("unknown check: " + name);
}

VerificationReport runFaultDetection(const std::string& name, const LGPair& p, std::uint32_t seed, const CheckOptions& opt) {
  FaultInjection f{seed, ""};
  VerificationReport inner = runCheck(name, p, opt, &f);
  VerificationReport r = inner;
  r.check = "fault:" + name;
  bool caught = !inner.passed && inner.witness && !f.injectedKey.empty() && inner.witness->key == f.injectedKey;
  r.passed = caught;
  r.detail = "injected at " + (f.injectedKey.empty() ? std::string("(nothing)") : f.injectedKey);
  if (!caught) {
    r.witness = Witness{f.injectedKey, inner.witness ? inner.witness->key : std::string("(check passed)"),
                        "failure witnessed at the injected key"};
  }
  return r;
}

}  // namespace lgcy
