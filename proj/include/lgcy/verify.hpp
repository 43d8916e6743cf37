#pragma once

#include "lgcy/cohseries.hpp"
#include "lgcy/genfun.hpp"
#include "lgcy/lgmodel.hpp"
#include "lgcy/transforms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lgcy {

struct Witness {
  std::string key;
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  std::string check;
  std::string pair;
  Orders orders;
  bool passed = false;
  std::optional<Witness> witness;  // always present on failure
  double elapsedMs = 0;
  std::string detail;

  std::string toJson() const;
  std::string toTableRow() const;
};

// Perturbs one coefficient on the left side of a check's comparison; the check records which key it touched.
struct FaultInjection {
  std::uint32_t seed = 1;
  std::string injectedKey;
};

// Optional overrides of a check's default truncation orders.
struct CheckOptions {
  std::optional<int> T;
  std::optional<int> lambda;
  std::optional<int> zMin;
  std::optional<int> zMax;
  CircSign circSign = CircSign::SectorAge;
};

VerificationReport checkOracle(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);
VerificationReport checkMlkOperator(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);
VerificationReport checkMlkUntwisted(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);
VerificationReport checkFactorization(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);
VerificationReport checkContinuation(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);
VerificationReport checkRctcConditions(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);
VerificationReport checkFjrwPipeline(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);
VerificationReport checkKernelCompatibility(const LGPair& p, const CheckOptions& opt = {},
                                            FaultInjection* fault = nullptr);
VerificationReport checkResidues(const LGPair& p, const CheckOptions& opt = {}, FaultInjection* fault = nullptr);

// oracle, mlk-operator, mlk-untwisted, factorization, continuation, rctc, fjrw, kernel, residue.
const std::vector<std::string>& checkNames();
// Throws std::invalid_argument on an unknown name.
VerificationReport runCheck(const std::string& name, const LGPair& p, const CheckOptions& opt = {},
                            FaultInjection* fault = nullptr);
// Runs `name` with one injected fault; passes when the check fails with the injected key as witness.
VerificationReport runFaultDetection(const std::string& name, const LGPair& p, std::uint32_t seed,
                                     const CheckOptions& opt = {});

// Rank of the lambda = 0 block of Ubar from compact-support sectors to the (Y sector, H power) basis.
int compactBlockRank(const LGPair& p, int* rows = nullptr);

}  // namespace lgcy
