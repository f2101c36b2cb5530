#pragma once

#include <filesystem>
#include <iosfwd>

#include "cli/run_config.hpp"
#include "ssgauss/analysis.hpp"
#include "ssgauss/limitvar.hpp"

namespace ssgauss::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitGate = 3,
  kExitNumerical = 4,
};

/// {"version", "config"} header shared by every output file.
json envelope(const RunConfig& cfg);

json to_json(const LimitVariance& lv);
json to_json(const ExperimentResult& res);
json to_json(const BoundCheckReport& rep);
json to_json(const ContractionReport& rep);

void write_json(const std::filesystem::path& path, const json& j);

// Each returns the process exit code; library exceptions propagate.
int cmd_models(bool as_json, std::ostream& out);
int cmd_variance(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_clt(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_contraction(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ssgauss::cli
