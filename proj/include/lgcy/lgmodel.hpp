#pragma once

#include "lgcy/rational.hpp"

#include <map>
#include <stdexcept>
#include <tuple>
#include <string>
#include <vector>

namespace lgcy {

struct PairError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Q = sum_j x_j^(d / c_j).
struct FermatData {
  std::vector<int> weights;  // c_j
  int degree = 0;            // d

  int n() const { return static_cast<int>(weights.size()); }
  int exponent(int j) const { return degree / weights[j]; }  // d / c_j
  bool isCalabiYau() const;
  void validate() const;  // throws PairError
};

// Diagonal symmetry stored as exponents k_j in [0, d/c_j); acts on x_j by exp(2 pi i k_j c_j / d).
struct GroupElement {
  std::vector<int> exps;
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.exps < b.exps; }
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.exps == b.exps; }
  std::string toString() const;
};

// Finite abelian group of diagonal symmetries containing the grading element.
// Elements are kept sorted by exponent vector; index 0 is the identity.
class AdmissibleGroup {
 public:
  AdmissibleGroup() = default;
  AdmissibleGroup(const FermatData& f, const std::vector<GroupElement>& gens);

  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<GroupElement>& elements() const { return elems_; }
  const std::vector<GroupElement>& generators() const { return gens_; }
  const GroupElement& element(int i) const { return elems_[i]; }
  int index(const GroupElement& g) const;  // throws if not in the group
  int identity() const { return 0; }
  int grading() const { return grading_; }
  int mul(int a, int b) const { return mul_[a * size() + b]; }
  int inv(int a) const { return inv_[a]; }
  int pow(int a, long k) const;
  int order(int a) const;
  int gradingPow(long k) const { return pow(grading_, k); }

 private:
  std::vector<GroupElement> elems_;
  std::vector<GroupElement> gens_;
  std::map<GroupElement, int> index_;
  std::vector<int> mul_, inv_;
  int grading_ = 0;
};

AdmissibleGroup groupFromGenerators(const FermatData& f, const std::vector<GroupElement>& gens);

enum class Side { LG, X, Y, Z, FJRW };
std::string sideName(Side s);

// One basis vector of a state space; h is the H power on Y and Z, zero elsewhere.
struct SectorBasisElement {
  Side side = Side::X;
  int g = 0;
  int h = 0;
  friend bool operator<(const SectorBasisElement& a, const SectorBasisElement& b) {
    return std::tie(a.side, a.g, a.h) < std::tie(b.side, b.g, b.h);
  }
  friend bool operator==(const SectorBasisElement& a, const SectorBasisElement& b) {
    return a.side == b.side && a.g == b.g && a.h == b.h;
  }
};

enum class Specialization { Untwisted, EulerInverse, EulerInverseSigned };

// coeff * lambda^lamExp; lamExp may be negative for pairing values.
struct LambdaMonomial {
  Rational coeff;
  int lamExp = 0;
  friend bool operator==(const LambdaMonomial& a, const LambdaMonomial& b) {
    return a.coeff == b.coeff && (a.coeff == 0 || a.lamExp == b.lamExp);
  }
  std::string toString() const;
};

class LGPair {
 public:
  LGPair(std::string name, FermatData f, const std::vector<GroupElement>& gens);

  const std::string& name() const { return name_; }
  const FermatData& fermat() const { return f_; }
  const AdmissibleGroup& group() const { return g_; }
  int n() const { return f_.n(); }
  int degree() const { return f_.degree; }
  int dbar() const { return dbar_; }
  Rational cbar(int j) const { return makeRational(f_.weights[j] * dbar_, f_.degree); }
  bool isCalabiYau() const { return f_.isCalabiYau(); }
  bool isSL() const { return sl_; }

  // m_j(g) in [0, 1).
  Rational multiplicity(int g, int j) const;
  Rational age(int g) const;
  int fixedDim(int g) const { return fixed_[g]; }
  bool isNarrow(int g) const { return narrow_[g]; }
  const std::vector<int>& narrowSectors() const { return narrowList_; }
  // Elements with N_g > 0: the extra insertions of the orbifold I-functions.
  const std::vector<int>& noncompactSectors() const { return noncompact_; }
  // Largest c with c * c_j < d for every j.
  int maxTwist() const;
  bool twistValid(int c) const { return c >= 0 && c <= maxTwist(); }
  std::string sectorName(int g) const;

  Rational lineBundleDegree(int c, int j, int genus, const std::vector<int>& insertions) const;
  bool isNonempty(int c, int genus, const std::vector<int>& insertions) const;
  LambdaMonomial pairTwisted(int c, int g1, int g2, Specialization spec) const;

  // Requirements of the orbifold constructions; throw PairError with a reason.
  void requireCalabiYau() const;
  void requireSL() const;
  void requirePeriodIsDegree() const;

 private:
  std::string name_;
  FermatData f_;
  AdmissibleGroup g_;
  int dbar_ = 1;
  bool sl_ = true;
  std::vector<int> fixed_;
  std::vector<bool> narrow_;
  std::vector<int> narrowList_, noncompact_;
};

// Free-function forms of the pair queries.
inline Rational age(const LGPair& p, int g) { return p.age(g); }
inline int fixedDim(const LGPair& p, int g) { return p.fixedDim(g); }
inline const std::vector<int>& narrowSectors(const LGPair& p) { return p.narrowSectors(); }
inline Rational lineBundleDegree(const LGPair& p, int c, int j, int genus, const std::vector<int>& ins) {
  return p.lineBundleDegree(c, j, genus, ins);
}
inline bool isNonempty(const LGPair& p, int c, int genus, const std::vector<int>& ins) {
  return p.isNonempty(c, genus, ins);
}
inline LambdaMonomial pairTwisted(const LGPair& p, int c, int g1, int g2, Specialization s) {
  return p.pairTwisted(c, g1, g2, s);
}

// Pair file: { "name"?: str, "weights": [...], "degree": d, "generators": [[...], ...] }.
LGPair parsePair(const std::string& text, const std::string& fallbackName = "pair");
LGPair loadPair(const std::string& path);
// Path of a pair shipped in the source tree's pairs/ directory.
std::string shippedPairPath(const std::string& file);

}  // namespace lgcy
