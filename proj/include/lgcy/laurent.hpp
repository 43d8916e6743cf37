#pragma once

#include "lgcy/sector_value.hpp"

#include <climits>
#include <map>
#include <string>

namespace lgcy {

// Finite Laurent polynomial in z with SectorValue coefficients, restricted to an explicit window.
class ZLaurentSeries {
 public:
  ZLaurentSeries() = default;
  explicit ZLaurentSeries(const Trunc& t, int zMin = INT_MIN, int zMax = INT_MAX) : t_(t), zMin_(zMin), zMax_(zMax) {}

  static ZLaurentSeries constant(const SectorValue& v, int zMin = INT_MIN, int zMax = INT_MAX);
  static ZLaurentSeries monomial(const SectorValue& v, int zExp, int zMin = INT_MIN, int zMax = INT_MAX);

  const Trunc& trunc() const { return t_; }
  int zMin() const { return zMin_; }
  int zMax() const { return zMax_; }
  const std::map<int, SectorValue>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  SectorValue coeff(int zExp) const;

  void add(int zExp, const SectorValue& v);
  ZLaurentSeries& operator+=(const ZLaurentSeries& o);
  ZLaurentSeries operator-() const;
  friend ZLaurentSeries operator+(ZLaurentSeries a, const ZLaurentSeries& b) { return a += b; }
  friend ZLaurentSeries operator-(ZLaurentSeries a, const ZLaurentSeries& b) { return a += -b; }
  friend ZLaurentSeries operator*(const ZLaurentSeries& a, const ZLaurentSeries& b);
  ZLaurentSeries operator*(const SectorValue& v) const;
  ZLaurentSeries shifted(int k) const;
  ZLaurentSeries windowed(int zMin, int zMax) const;
  friend bool operator==(const ZLaurentSeries& a, const ZLaurentSeries& b) { return a.terms_ == b.terms_; }

  std::string toString() const;

 private:
  Trunc t_;
  int zMin_ = INT_MIN;
  int zMax_ = INT_MAX;
  std::map<int, SectorValue> terms_;
};

// prod_{l=0}^{steps-1} (x - l z) with x = -weight*lambda - base*z, as an explicit polynomial in lambda and z.
// This equals z^steps Gamma(1 + x/z) / Gamma(1 - steps + x/z).
ZLaurentSeries gammaRatioRewrite(const Rational& weight, const Rational& base, unsigned steps, const Trunc& t);

}  // namespace lgcy
