#pragma once

#include "lgcy/cohseries.hpp"
#include "lgcy/laurent.hpp"
#include "lgcy/lgmodel.hpp"
#include "lgcy/series1d.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgcy {

struct NonDivisibleError : std::domain_error {
  SeriesKey key;
  NonDivisibleError(const std::string& what, SeriesKey k) : std::domain_error(what), key(std::move(k)) {}
};

// Moves every Gamma atom onto the representative of its offset class (the offset reduced into [0, 1)),
// multiplying by the explicit shift factor Gamma(1-X-r-n) / Gamma(1-X-r). A shift factor that is not
// invertible (positive power, n >= 1, r = 0) leaves its atom untouched. Atoms must carry zScale = 0.
SectorValue canonicalizeAtoms(const SectorValue& v);

struct BlockEntry {
  int out = 0;
  ZLaurentSeries entry;
};

// Linear operator on CohSeries. Block transforms act sector by sector through ZLaurentSeries entries;
// grading transforms rescale each monomial by a power of z or tau fixed by its degree.
class Transform {
 public:
  enum class Kind { Block, ZGrading, Deg0Scaling, Composite };

  static Transform block(std::string name, Side from, Side to, std::vector<int> toHBounds, int toTwist = 0);
  // Monomial lambda^p H^k on sector g picks up z^(sign * (age_g + p + k) + shift).
  static Transform zGrading(std::string name, Side side, std::vector<Rational> ages, int sign, int shift);
  // Monomial lambda^p H^k picks up tau^(sign * (p + k)).
  static Transform deg0Scaling(std::string name, Side side, int sign);
  // Parts are applied first to last.
  static Transform composite(std::string name, std::vector<Transform> parts);

  void addEntry(int in, int out, ZLaurentSeries entry);
  void setDivideByLambdaPlusH(bool on) { divide_ = on; }
  void setCanonicalizeAfter(bool on) { canonicalize_ = on; }
  void setSymplecticClaimed(bool on) { symplectic_ = on; }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Side domain() const { return from_; }
  Side codomain() const { return to_; }
  bool symplecticClaimed() const { return symplectic_; }
  const std::vector<BlockEntry>& entries(int in) const;
  const std::vector<Transform>& parts() const { return parts_; }

  CohSeries apply(const CohSeries& x) const;
  std::string dump(const LGPair* pair = nullptr) const;

 private:
  CohSeries applyBlock(const CohSeries& x) const;
  CohSeries applyZGrading(const CohSeries& x) const;
  CohSeries applyDeg0(const CohSeries& x) const;

  Kind kind_ = Kind::Block;
  std::string name_;
  Side from_ = Side::X, to_ = Side::X;
  int toTwist_ = 0;
  std::vector<int> toHBounds_;
  std::map<int, std::vector<BlockEntry>> blocks_;
  bool divide_ = false, canonicalize_ = false, symplectic_ = false;
  std::vector<Rational> ages_;
  int sign_ = 1, shift_ = 0;
  std::vector<Transform> parts_;
};

// phi^0_g -> phi^c_{g j^-c} (and its inverse).
Transform iC(const LGPair& p, int c);
Transform iCInverse(const LGPair& p, int c);

// Sign convention for 1_g -> +-phi_{g j^-1}: exponent sum_j m_j(g) as displayed, or sum_j m_j(g j).
enum class CircSign { SectorAge, ShiftedAge };
Transform deltaCirc(const LGPair& p, CircSign sign = CircSign::SectorAge);

// Diagonal -exp(tau d H / (2z)) / (d (lambda + H)) on Y; pi*i is carried as tau/2.
Transform deltaDiamond(const LGPair& p, int lambdaOrder);

// Entry of 1_g -> 1~_{g j^-b}: (e^{d(lambda+H)} - 1) / (d (e^{lambda+H} xi^b - 1)), or the geometric sum when xi^b = 1.
enum class UBarRoute { GeometricSum, Quotient };
SectorValue uBarEntry(const LGPair& p, long b, const Trunc& t, UBarRoute route);
Transform uBar(const LGPair& p, int lambdaOrder, UBarRoute route = UBarRoute::GeometricSum);

Transform gammaClassOp(const LGPair& p, Side side, bool inverse, int lambdaOrder);
Transform zGrading(const LGPair& p, Side side, int sign, int shift = 0);
Transform deg0Scaling(Side side, int sign);
// z^{-Gr} Gamma(Y) tau^{deg0/2} Ubar tau^{-deg0/2} Gamma(X)^{-1} z^{Gr}.
Transform bigU(const LGPair& p, int lambdaOrder);
// Y -> Z: H^k survives for k <= N_g - 2, H^{N_g - 1} is killed.
Transform pullbackToZ(const LGPair& p);

// sum_k a_k (lambda + H)^k.
SectorValue substituteLambdaPlusH(const RSeries& a, const Trunc& t);
// Plain value with lambda replaced by -H.
SectorValue lambdaToMinusH(const SectorValue& v);
// Rank over Q(xi) by Gaussian elimination.
int rankOverCyclotomic(std::vector<std::vector<Cyclotomic>> m);

// Diagonal entry prod_j exp(sum_{k>=0} s_k^j B_{k+1}(m_j) z^k / (k+1)!) with s kept symbolic:
// s0Exponent[j] multiplies s_0^j, logCoeff[j][k-1] multiplies s_k^j z^k.
struct TwistEntry {
  std::vector<Rational> s0Exponent;
  std::vector<std::vector<Rational>> logCoeff;
  friend bool operator==(const TwistEntry& a, const TwistEntry& b) {
    return a.s0Exponent == b.s0Exponent && a.logCoeff == b.logCoeff;
  }
  std::string toString() const;
};

struct DiagonalTwist {
  int twist = 0;
  std::vector<TwistEntry> entries;  // indexed by sector
};

// Multiplicity of the twisted basis vector phi^c_g on coordinate j, from rational arithmetic.
Rational twistedMultiplicity(const LGPair& p, int c, int g, int j);
TwistEntry deltaCEntry(const LGPair& p, int c, int g, int K);
DiagonalTwist deltaC(const LGPair& p, int c, int K);
// iC(c) o D o iC(c)^{-1}, a diagonal twist on the phi^c basis.
DiagonalTwist conjugateByIC(const LGPair& p, int c, const DiagonalTwist& d);

// exp of the s_{k>=1} part for rational s[j][k-1], as a series in z with zOrder + 1 coefficients.
RSeries evaluateTwistEntry(const TwistEntry& e, const std::vector<std::vector<Rational>>& s, int zOrder);

// prod_j (base_j lambda)^exponent_j times a series in w = z / lambda.
struct SpecializedTwistEntry {
  std::vector<std::pair<Rational, Rational>> lambdaPowers;
  RSeries w;
  friend bool operator==(const SpecializedTwistEntry& a, const SpecializedTwistEntry& b) {
    return a.lambdaPowers == b.lambdaPowers && a.w == b.w;
  }
};
// s_k^j = (k-1)!/(c_j lambda)^k for k >= 1 and e^{s_0^j} = (-c_j lambda)^{-1} (or (c_j lambda)^{-1} when signed).
SpecializedTwistEntry specializeTwistEntry(const LGPair& p, const TwistEntry& e, Specialization spec, int wOrder);

}  // namespace lgcy
