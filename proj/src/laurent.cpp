#include "lgcy/laurent.hpp"

#include <sstream>

namespace lgcy {

ZLaurentSeries ZLaurentSeries::constant(const SectorValue& v, int zMin, int zMax) {
  return monomial(v, 0, zMin, zMax);
}

ZLaurentSeries ZLaurentSeries::monomial(const SectorValue& v, int zExp, int zMin, int zMax) {
  ZLaurentSeries s(v.trunc(), zMin, zMax);
  s.add(zExp, v);
  return s;
}

SectorValue ZLaurentSeries::coeff(int zExp) const {
  auto it = terms_.find(zExp);
  return it == terms_.end() ? SectorValue(t_) : it->second;
}

void ZLaurentSeries::add(int zExp, const SectorValue& v) {
  if (zExp < zMin_ || zExp > zMax_ || v.isZero()) return;
  auto it = terms_.find(zExp);
  if (it == terms_.end()) {
    terms_.emplace(zExp, v);
    return;
  }
  it->second += v;
  if (it->second.isZero()) terms_.erase(it);
}

ZLaurentSeries& ZLaurentSeries::operator+=(const ZLaurentSeries& o) {
  for (auto& [k, v] : o.terms_) add(k, v);
  return *this;
}

ZLaurentSeries ZLaurentSeries::operator-() const {
  ZLaurentSeries r(t_, zMin_, zMax_);
  for (auto& [k, v] : terms_) r.terms_.emplace(k, -v);
  return r;
}

ZLaurentSeries operator*(const ZLaurentSeries& a, const ZLaurentSeries& b) {
  ZLaurentSeries r(a.t_, std::max(a.zMin_, b.zMin_), std::min(a.zMax_, b.zMax_));
  for (auto& [ka, va] : a.terms_)
    for (auto& [kb, vb] : b.terms_) r.add(ka + kb, va * vb);
  return r;
}

ZLaurentSeries ZLaurentSeries::operator*(const SectorValue& v) const {
  ZLaurentSeries r(t_, zMin_, zMax_);
  for (auto& [k, x] : terms_) r.add(k, x * v);
  return r;
}

ZLaurentSeries ZLaurentSeries::shifted(int k) const {
  ZLaurentSeries r(t_, zMin_, zMax_);
  for (auto& [e, v] : terms_) r.add(e + k, v);
  return r;
}

ZLaurentSeries ZLaurentSeries::windowed(int zMin, int zMax) const {
  ZLaurentSeries r(t_, zMin, zMax);
  for (auto& [e, v] : terms_) r.add(e, v);
  return r;
}

std::string ZLaurentSeries::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << v.toString() << "]*z^" << k;
  }
  return os.str();
}

ZLaurentSeries gammaRatioRewrite(const Rational& weight, const Rational& base, unsigned steps, const Trunc& t) {
  ZLaurentSeries result = ZLaurentSeries::constant(SectorValue::constant(t, Rational(1)));
  for (unsigned l = 0; l < steps; ++l) {
    ZLaurentSeries factor(t);
    factor.add(0, SectorValue::lambda(t).scaled(Rational(-weight)));
    factor.add(1, SectorValue::constant(t, Rational(-(base + Rational(l)))));
    result = result * factor;
  }
  return result;
}

}  // namespace lgcy
