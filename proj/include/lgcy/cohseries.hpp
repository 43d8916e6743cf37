#pragma once

#include "lgcy/laurent.hpp"
#include "lgcy/lgmodel.hpp"
#include "lgcy/sector_value.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lgcy {

// Truncation orders shared by a computation.
struct Orders {
  int T = 8;        // total t-degree bound
  int lambda = 4;   // lambda^k kept for k <= lambda
  int zMin = -10;   // reporting window for z exponents
  int zMax = 2;

  static Orders make(int T, int lambda) { return Orders{T, lambda, -T - 2, 2}; }
  static Orders make(int T, int lambda, int zMin, int zMax) { return Orders{T, lambda, zMin, zMax}; }
};

// base^((lam * lambda + h * H) * tau^tauPow * z^zPow); base is "t" or "q".
struct PrefactorToken {
  std::string base;
  Rational lam = 0;
  Rational h = 0;
  int tauPow = 0;
  int zPow = 0;
  friend bool operator==(const PrefactorToken& a, const PrefactorToken& b) {
    return a.base == b.base && a.lam == b.lam && a.h == b.h && a.tauPow == b.tauPow && a.zPow == b.zPow;
  }
  std::string toString() const;
};

// A formal variable t^g (or the primary coordinate); the sector is the basis element it multiplies.
struct Variable {
  std::string name;
  int sector = 0;
  friend bool operator==(const Variable& a, const Variable& b) { return a.name == b.name && a.sector == b.sector; }
};

struct SeriesKey {
  int sector = 0;
  std::vector<int> tdeg;
  int z = 0;
  auto key() const { return std::tie(sector, tdeg, z); }
  friend bool operator<(const SeriesKey& a, const SeriesKey& b) { return a.key() < b.key(); }
  friend bool operator==(const SeriesKey& a, const SeriesKey& b) { return a.key() == b.key(); }
  std::string toString() const;
};

// Finite sum over keys of SectorValue * z^z * prod t_i^tdeg_i * (basis element of `sector`).
// Each sector carries its own nilpotency bound for H.
class CohSeries {
 public:
  CohSeries() = default;
  CohSeries(Side side, unsigned cycloOrder, std::vector<int> hBounds, std::vector<Variable> vars, Orders orders, int twist = 0);

  Side side() const { return side_; }
  int twist() const { return twist_; }
  unsigned cycloOrder() const { return order_; }
  const std::vector<int>& hBounds() const { return hBounds_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const Orders& orders() const { return orders_; }
  void setOrders(const Orders& o) { orders_ = o; }
  const std::vector<PrefactorToken>& prefactor() const { return prefactor_; }
  void setPrefactor(std::vector<PrefactorToken> p) { prefactor_ = std::move(p); }
  const std::map<SeriesKey, SectorValue>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Trunc truncFor(int sector) const { return Trunc{order_, orders_.lambda, hBounds_.at(sector)}; }
  // An empty series with the same shape.
  CohSeries emptyLike() const;
  CohSeries emptyLike(Side side, std::vector<int> hBounds) const;

  void add(const SeriesKey& k, const SectorValue& v);
  SectorValue coeff(const SeriesKey& k) const;

  CohSeries& operator+=(const CohSeries& o);
  CohSeries operator-() const;
  friend CohSeries operator+(CohSeries a, const CohSeries& b) { return a += b; }
  friend CohSeries operator-(CohSeries a, const CohSeries& b) { return a += -b; }
  CohSeries scaled(const Cyclotomic& c) const;

  // Keys with z in [zMin, zMax] and total t-degree <= T.
  CohSeries windowed(int zMin, int zMax, int T) const;
  CohSeries windowed() const { return windowed(orders_.zMin, orders_.zMax, orders_.T); }
  // Keep only terms whose t-degree vanishes outside the listed variables.
  CohSeries restrictedToVariables(const std::vector<int>& keep) const;

  // Shape (side, variables, prefactor) and terms agree.
  friend bool operator==(const CohSeries& a, const CohSeries& b);
  // First key (in key order) where the two series differ, if any.
  std::optional<SeriesKey> firstDifference(const CohSeries& o) const;

  std::string toString(const std::vector<std::string>* sectorNames = nullptr) const;
  std::string toJson() const;
  static CohSeries fromJson(const std::string& text);

 private:
  Side side_ = Side::X;
  int twist_ = 0;
  unsigned order_ = 1;
  std::vector<int> hBounds_;
  std::vector<Variable> vars_;
  Orders orders_;
  std::vector<PrefactorToken> prefactor_;
  std::map<SeriesKey, SectorValue> terms_;
};

int totalDegree(const std::vector<int>& tdeg);

// Per-sector H bounds: 1 on the X, LG and FJRW sides, N_g on Y, N_g - 1 on Z (clamped at 0).
std::vector<int> hBoundsFor(const LGPair& pair, Side side);

}  // namespace lgcy
