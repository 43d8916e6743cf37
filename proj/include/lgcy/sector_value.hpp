#pragma once

#include "lgcy/cyclotomic.hpp"
#include "lgcy/rational.hpp"

#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace lgcy {

// Opaque symbol Gamma(1 - (weight*lambda + hWeight*H) * tau^tauScale * z^zScale - offset).
// With the defaults (hWeight = 0, tauScale = -1, zScale = 0) this is Gamma(1 - weight*beta - offset)
// for beta = lambda/tau. Atoms are never evaluated; equality is by key.
struct GammaAtom {
  Rational weight;
  Rational offset;
  Rational hWeight = 0;
  int tauScale = -1;
  int zScale = 0;

  auto key() const { return std::tie(weight, hWeight, tauScale, zScale, offset); }
  friend bool operator<(const GammaAtom& a, const GammaAtom& b) { return a.key() < b.key(); }
  friend bool operator==(const GammaAtom& a, const GammaAtom& b) { return a.key() == b.key(); }
  // Same variable, possibly different offsets.
  bool sameVariable(const GammaAtom& o) const {
    return weight == o.weight && hWeight == o.hWeight && tauScale == o.tauScale && zScale == o.zScale;
  }
  std::string toString() const;
};

// Sorted (atom, nonzero exponent) list.
using AtomPowers = std::vector<std::pair<GammaAtom, int>>;
AtomPowers mergeAtoms(const AtomPowers& a, const AtomPowers& b);

struct Monomial {
  int lam = 0;
  int h = 0;
  int tau = 0;
  AtomPowers atoms;

  auto key() const { return std::tie(lam, h, tau, atoms); }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.key() < b.key(); }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.key() == b.key(); }
  // Same tau power and atoms: the part that rides along with lambda/H arithmetic.
  bool sameExtra(const Monomial& o) const { return tau == o.tau && atoms == o.atoms; }
};

// Truncation data carried by every SectorValue.
struct Trunc {
  unsigned order = 1;  // cyclotomic order of the coefficient field
  int lambdaMax = 4;   // lambda^k with k > lambdaMax is dropped
  int hBound = 1;      // H^k with k >= hBound is zero
  friend bool operator==(const Trunc& a, const Trunc& b) {
    return a.order == b.order && a.lambdaMax == b.lambdaMax && a.hBound == b.hBound;
  }
};

struct NonUnitError : std::domain_error {
  using std::domain_error::domain_error;
};

// Truncated polynomial in lambda and a nilpotent H over Q(xi), extended by tau powers and Gamma atoms.
class SectorValue {
 public:
  SectorValue() = default;
  explicit SectorValue(const Trunc& t) : t_(t) {}

  static SectorValue constant(const Trunc& t, const Cyclotomic& c);
  static SectorValue constant(const Trunc& t, const Rational& r);
  static SectorValue lambda(const Trunc& t);
  static SectorValue hyperplane(const Trunc& t);

  const Trunc& trunc() const { return t_; }
  const std::map<Monomial, Cyclotomic>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  // Rejects negative lambda or H exponents; silently drops terms beyond truncation.
  void addTerm(const Monomial& m, const Cyclotomic& c);

  SectorValue operator-() const;
  SectorValue& operator+=(const SectorValue& o);
  SectorValue& operator-=(const SectorValue& o);
  friend SectorValue operator+(SectorValue a, const SectorValue& b) { return a += b; }
  friend SectorValue operator-(SectorValue a, const SectorValue& b) { return a -= b; }
  friend SectorValue operator*(const SectorValue& a, const SectorValue& b);
  SectorValue& operator*=(const SectorValue& o) { return *this = *this * o; }
  SectorValue scaled(const Cyclotomic& c) const;
  SectorValue scaled(const Rational& r) const;
  SectorValue timesTau(int k) const;
  SectorValue timesAtom(const GammaAtom& a, int power) const;

  friend bool operator==(const SectorValue& a, const SectorValue& b) {
    return a.t_ == b.t_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SectorValue& a, const SectorValue& b) { return !(a == b); }
  // Equality of the terms both sides know (lambda degree <= min of the two lambdaMax).
  bool agreesWith(const SectorValue& o) const;

  // Re-truncate (only to coarser or equal data) or move into a different H bound.
  SectorValue retruncated(const Trunc& t) const;
  // Lowest lambda exponent among terms, INT_MAX for zero.
  int lambdaValuation() const;
  // The lambda^0 part.
  SectorValue atLambdaZero() const;
  // Whether all terms are free of tau powers and atoms.
  bool isPlain() const;
  // The constant (lambda^0 H^0, no tau, no atom) coefficient.
  Cyclotomic constantTerm() const;

  std::string toString() const;

 private:
  Trunc t_;
  std::map<Monomial, Cyclotomic> terms_;
};

// exp(x) for x with no constant part; exact at the truncation order.
SectorValue seriesExp(const SectorValue& x);
// 1/x for x whose constant part is a nonzero cyclotomic; throws NonUnitError otherwise.
SectorValue seriesInvert(const SectorValue& x);
// x^k for k >= 0.
SectorValue seriesPow(const SectorValue& x, unsigned k);

// Exact quotient x / (lambda + H) in Q(xi)[[lambda]][H]/(H^hBound), or nullopt if x is not divisible.
// The quotient is known to lambda order lambdaMax - hBound (one order is spent per H degree).
std::optional<SectorValue> divideByLambdaPlusH(const SectorValue& x);

}  // namespace lgcy
