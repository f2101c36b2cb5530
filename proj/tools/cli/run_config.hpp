#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssgauss/hermite.hpp"
#include "ssgauss/models.hpp"
#include "ssgauss/montecarlo.hpp"

namespace ssgauss::cli {

using json = nlohmann::ordered_json;

// hermite:q, even_power:p or odd_abs_power:p
struct FSpec {
  std::string kind = "hermite";
  int index = 2;
};

FSpec parse_f_spec(const std::string& text);
std::string to_string(const FSpec& f);

struct RunConfig {
  std::string command;
  std::string model = "fbm";
  ParameterMap params;
  // increment exponent for `variance` when no model is involved
  std::optional<double> alpha;
  FSpec f;
  std::optional<int> q_max;  // empty: max(12, 2p)
  std::vector<int> n;
  std::vector<double> t_grid;
  std::optional<int> N;  // increments to assemble; empty: floor(n max t)
  int M = 4000;
  std::uint64_t seed = 12345;
  unsigned threads = 1;
  std::string out = "ssgauss-out";
  int q = 2;
  int r = 1;
  double x_max = 1e4;
  int grid_size = 160;
  int k_max = 20;
  int lemma_n = 729;
  double rel_tol = 1e-10;
  int bootstrap_resamples = 200;
  bool all_pairs = false;
  Tolerances tol;
};

json to_json(const RunConfig& cfg);
/// Overwrites the fields present in j. Unknown keys are a DomainError.
void apply_json(RunConfig& cfg, const json& j);
RunConfig from_json(const json& j);

/// Fills catalog defaults for the model parameters and the per-command
/// defaults for n and t_grid.
void resolve(RunConfig& cfg);

ModelSpec make_model(const RunConfig& cfg);
HermiteFunction make_function(const RunConfig& cfg);

}  // namespace ssgauss::cli
