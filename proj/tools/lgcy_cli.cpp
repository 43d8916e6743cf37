#include "lgcy/genfun.hpp"
#include "lgcy/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

using namespace lgcy;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string pairPath;
  std::optional<int> T, lambda, zMin, zMax;
  std::string format = "table";
  std::vector<std::string> checks;
  std::string dumpDir;
  std::string side = "lg";
  bool selfTest = false;
  bool shiftedSign = false;
  std::uint32_t seed = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& cfg) {
  if (cfg.T && *cfg.T < 0) throw UsageError("--T must be nonnegative");
  if (cfg.lambda && *cfg.lambda < 0) throw UsageError("--lambda-order must be nonnegative");
  if (cfg.zMin && cfg.zMax && *cfg.zMin > *cfg.zMax) throw UsageError("--z-min exceeds --z-max");
  for (auto& c : cfg.checks) {
    if (c == "all") continue;
    auto& names = checkNames();
    if (std::find(names.begin(), names.end(), c) == names.end()) throw UsageError("unknown check: " + c);
  }
}

void writeDump(const RunConfig& cfg, const std::string& file, const std::string& text) {
  if (cfg.dumpDir.empty()) return;
  std::filesystem::create_directories(cfg.dumpDir);
  std::ofstream out(std::filesystem::path(cfg.dumpDir) / file);
  if (!out) throw UsageError("cannot write to dump directory " + cfg.dumpDir);
  out << text << "\n";
}

json describeJson(const LGPair& p) {
  const auto& G = p.group();
  json j;
  j["pair"] = p.name();
  j["weights"] = p.fermat().weights;
  j["degree"] = p.degree();
  j["period"] = p.dbar();
  j["order"] = G.size();
  j["grading"] = G.element(G.grading()).toString();
  j["calabiYau"] = p.isCalabiYau();
  j["SL"] = p.isSL();
  j["maxTwist"] = p.maxTwist();
  j["narrowCount"] = p.narrowSectors().size();
  json sectors = json::array();
  for (int g = 0; g < G.size(); ++g)
    sectors.push_back({{"name", p.sectorName(g)},
                       {"exponents", G.element(g).toString()},
                       {"age", p.age(g).get_str()},
                       {"fixedDim", p.fixedDim(g)},
                       {"narrow", p.isNarrow(g)}});
  j["sectors"] = sectors;
  // genus-zero three-point degrees with two insertions of the grading element
  json degrees = json::array();
  for (int g : p.narrowSectors()) {
    std::vector<int> ins{G.grading(), G.grading(), g};
    std::vector<std::string> deg;
    for (int k = 0; k < p.n(); ++k) deg.push_back(p.lineBundleDegree(0, k, 0, ins).get_str());
    degrees.push_back({{"insertions", {p.sectorName(ins[0]), p.sectorName(ins[1]), p.sectorName(g)}},
                       {"degrees", deg},
                       {"nonempty", p.isNonempty(0, 0, ins)}});
  }
  j["threePointDegrees"] = degrees;
  return j;
}

int cmdDescribe(const RunConfig& cfg, const LGPair& p) {
  json j = describeJson(p);
  writeDump(cfg, p.name() + "_describe.json", j.dump(2));
  if (cfg.format == "structured") {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "pair " << p.name() << "  degree " << p.degree() << "  weights";
  for (int c : p.fermat().weights) std::cout << " " << c;
  std::cout << "\n|G| = " << j["order"] << "  grading element " << j["grading"].get<std::string>() << "  period "
            << p.dbar() << "\nnarrow = " << p.narrowSectors().size() << " sectors  CY = " << std::boolalpha
            << p.isCalabiYau() << "  SL = " << p.isSL() << "  max twist " << p.maxTwist() << "\n\n";
  std::cout << std::left << std::setw(12) << "sector" << std::setw(20) << "exponents" << std::setw(8) << "age"
            << std::setw(6) << "N_g" << "narrow\n";
  for (auto& s : j["sectors"])
    std::cout << std::setw(12) << s["name"].get<std::string>() << std::setw(20) << s["exponents"].get<std::string>()
              << std::setw(8) << s["age"].get<std::string>() << std::setw(6) << s["fixedDim"].get<int>()
              << (s["narrow"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << "\nthree-point line bundle degrees (genus 0, c = 0)\n";
  for (auto& row : j["threePointDegrees"]) {
    std::cout << "  ";
    for (auto& s : row["insertions"]) std::cout << s.get<std::string>() << " ";
    std::cout << "->";
    for (auto& s : row["degrees"]) std::cout << " " << s.get<std::string>();
    std::cout << (row["nonempty"].get<bool>() ? "  nonempty" : "  empty") << "\n";
  }
  return 0;
}

int cmdIfun(const RunConfig& cfg, const LGPair& p) {
  p.requireCalabiYau();
  p.requirePeriodIsDegree();
  Orders o = Orders::make(cfg.T.value_or(6), cfg.lambda.value_or(3));
  if (cfg.zMin) o.zMin = *cfg.zMin;
  if (cfg.zMax) o.zMax = *cfg.zMax;
  CohSeries s;
  if (cfg.side == "lg") {
    s = iFunctionX(p, o);
  } else if (cfg.side == "cy") {
    s = iFunctionY(p, o);
  } else {
    p.requireSL();
    if (!cfg.lambda) o.lambda = 1;
    for (int g = 0; g < p.group().size(); ++g) o.lambda = std::max(o.lambda, p.fixedDim(g) + 1);
    s = fjrwIFunction(p, o, cfg.shiftedSign ? CircSign::ShiftedAge : CircSign::SectorAge);
  }
  s = s.windowed(o.zMin, o.zMax, o.T);
  writeDump(cfg, p.name() + "_" + cfg.side + ".json", s.toJson());
  if (cfg.format == "structured") {
    std::cout << s.toJson() << "\n";
  } else {
    std::vector<std::string> names;
    for (int g = 0; g < p.group().size(); ++g) names.push_back(p.sectorName(g));
    std::cout << s.toString(&names) << "\n";
  }
  return 0;
}

int cmdVerify(const RunConfig& cfg, const LGPair& p) {
  std::vector<std::string> checks = cfg.checks;
  if (checks.empty() || std::find(checks.begin(), checks.end(), "all") != checks.end()) checks = checkNames();
  CheckOptions opt;
  opt.T = cfg.T;
  opt.lambda = cfg.lambda;
  opt.zMin = cfg.zMin;
  opt.zMax = cfg.zMax;
  opt.circSign = cfg.shiftedSign ? CircSign::ShiftedAge : CircSign::SectorAge;
  static const std::vector<std::string> needCY{"factorization", "continuation", "rctc", "fjrw", "kernel"};
  for (auto& name : checks)
    if (std::find(needCY.begin(), needCY.end(), name) != needCY.end()) {
      p.requireCalabiYau();
      p.requirePeriodIsDegree();
    }
  bool ok = true;
  json all = json::array();
  for (auto& name : checks) {
    VerificationReport r = cfg.selfTest ? runFaultDetection(name, p, cfg.seed, opt) : runCheck(name, p, opt);
    ok = ok && r.passed;
    if (cfg.format == "structured")
      std::cout << r.toJson() << "\n";
    else
      std::cout << r.toTableRow() << "\n";
    all.push_back(json::parse(r.toJson()));
  }
  writeDump(cfg, p.name() + (cfg.selfTest ? "_selftest" : "_verify") + ".json", all.dump(2));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermat Landau-Ginzburg / Calabi-Yau generating functions and identity checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--pair", cfg.pairPath, "pair file (JSON)")->required();
    sub->add_option("--T", cfg.T, "total t-degree truncation");
    sub->add_option("--lambda-order", cfg.lambda, "lambda truncation");
    sub->add_option("--z-min", cfg.zMin, "lowest z exponent kept");
    sub->add_option("--z-max", cfg.zMax, "highest z exponent kept");
    sub->add_option("--format", cfg.format, "table or structured")->check(CLI::IsMember({"table", "structured"}));
    sub->add_option("--dump", cfg.dumpDir, "directory for series and report files");
    sub->add_flag("--shifted-sign", cfg.shiftedSign, "use (-1)^age(g j) in the narrow projection");
  };
  CLI::App* describe = app.add_subcommand("describe", "sector census and flags of a pair");
  common(describe);
  CLI::App* ifun = app.add_subcommand("ifun", "truncated I-function");
  common(ifun);
  ifun->add_option("--side", cfg.side, "lg, cy or fjrw")->check(CLI::IsMember({"lg", "cy", "fjrw"}));
  CLI::App* verify = app.add_subcommand("verify", "run identity checks");
  common(verify);
  verify->add_option("--checks", cfg.checks, "comma-separated check names or all")->delimiter(',');
  verify->add_flag("--self-test", cfg.selfTest, "inject one fault per check and require it to be caught");
  verify->add_option("--seed", cfg.seed, "fault injection seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    validate(cfg);
    LGPair p = loadPair(cfg.pairPath);
    if (describe->parsed()) return cmdDescribe(cfg, p);
    if (ifun->parsed()) return cmdIfun(cfg, p);
    return cmdVerify(cfg, p);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
