#pragma once

#include "lgcy/cohseries.hpp"
#include "lgcy/lgmodel.hpp"
#include "lgcy/transforms.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgcy {

// First coefficient where two sides of an identity disagree.
struct IdentityFailure : std::runtime_error {
  SeriesKey key;
  std::string lhs, rhs;
  IdentityFailure(const std::string& what, SeriesKey k, std::string l, std::string r)
      : std::runtime_error(what), key(std::move(k)), lhs(std::move(l)), rhs(std::move(r)) {}
};

struct DivisibilityError : std::domain_error {
  SeriesKey key;
  DivisibilityError(const std::string& what, SeriesKey k) : std::domain_error(what), key(std::move(k)) {}
};

// Variables t^g for the listed sectors, named "t^<sector name>".
std::vector<Variable> sectorVariables(const LGPair& p, const std::vector<int>& sectors);
// The primary coordinate t (multiplying 1_j) followed by t^{g_s} for every g_s with N_g > 0.
std::vector<Variable> xVariables(const LGPair& p);
// q^(1/d) followed by t^{g_s}.
std::vector<Variable> yVariables(const LGPair& p);

// sum over exponent tuples a of z^{1 - |a|} prod (t^g)^{a_g} / a_g! phi^c_{prod g^{a_g}}.
// `active` lists the sectors with a variable; empty means every group element.
CohSeries untwistedJ(const LGPair& p, int c, const Orders& o, std::vector<int> active = {});

// Genus-zero descendant integral of prod psi_i^{a_i} over the moduli of n marked points, by the string equation.
Rational psiIntegralOracle(const std::vector<int>& exponents);

// z + t + sum over stable correlators <phi_{g0} psi^a, t, ..., t> / n! z^{-1-a} phi^{g0}, assembled from the
// selection rule and psiIntegralOracle; the dual basis comes from inverting the pairing matrix.
CohSeries oracleJ(const LGPair& p, int c, const Orders& o, std::vector<int> active = {});

// Prefactor t^{d lambda / z} carried as a token.
CohSeries iFunctionX(const LGPair& p, const Orders& o);

// For k0 c_j/d - a^j <= 0 the bounded product is read either through the Gamma ratio or as an empty product.
enum class EmptyRangeConvention { GammaConsistent, EmptyProduct };
// Prefactor q^{H/z}; keys where the two conventions disagree are appended to `flagged`.
CohSeries iFunctionY(const LGPair& p, const Orders& o, EmptyRangeConvention conv = EmptyRangeConvention::GammaConsistent,
                     std::vector<SeriesKey>* flagged = nullptr);

// Gamma-atom series with I = z^{1-Gr} Gamma tau^{deg0/2} H; prefactors t^{d lambda/tau} and q^{H/tau}.
CohSeries hFunctionX(const LGPair& p, const Orders& o);
CohSeries hFunctionY(const LGPair& p, const Orders& o);

// z^{1-Gr} Gamma tau^{deg0/2} as one composite for the given side.
Transform reconstructionOp(const LGPair& p, Side side, int lambdaOrder);

struct HFactorization {
  Transform gammaOp;
  CohSeries h;
};
// Builds H for the side, pushes it back through reconstructionOp and compares with `iSeries` inside the
// z-window; throws IdentityFailure at the first differing coefficient.
HFactorization hFactorization(const LGPair& p, const CohSeries& iSeries, Side side);

// Closed-form continuation of H^X to the Y side (prefactor t^{d lambda/tau}).
CohSeries hContinued(const LGPair& p, const Orders& o);

// Residue of Gamma(ds + b + d(lambda+H)/tau) at the m-th pole, via the functional equation.
Rational gammaResidue(int m, int b, int d);
bool residueUnitCheck(int m, int b, int d);

// z d/dt_var. Retain keeps the derivative of prefactor tokens on that variable; Strip drops those tokens first.
enum class PrefactorMode { Retain, Strip };
CohSeries tDerivative(const CohSeries& s, int var, PrefactorMode mode);

// First key on a sector with N_g > 0 whose coefficient is not divisible by lambda^{N_g}.
std::optional<SeriesKey> lambdaDivisibilityWitness(const LGPair& p, const CohSeries& s);
// Coefficientwise lambda -> 0.
CohSeries lambdaLimit(const CohSeries& s);

// lim_{lambda->0} DeltaCirc(z d/dt I^X), the prefactor derivative stripped.
CohSeries fjrwIFunction(const LGPair& p, const Orders& o, CircSign sign = CircSign::SectorAge);

}  // namespace lgcy
