#include "cli/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/version.hpp"

namespace ssgauss::cli {

namespace {

struct Flags {
  std::string config;
  std::string model;
  double H = 0.0, K = 0.0, alpha = 0.0;
  std::string f;
  std::vector<int> n;
  std::vector<double> t;
  int N = 0;
  int M = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  int q = 0, r = 0;
  double x_max = 0.0;
  int grid_size = 0;
  int k_max = 0;
  int lemma_n = 0;
  double rel_tol = 0.0;
  int q_max = 0;
  int bootstrap = 0;
  bool all_pairs = false;
  bool print_config = false;
  bool as_json = false;
};

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("SSGAUSS_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw DomainError(std::string("SSGAUSS_SEED is not an integer: ") + s);
  return v;
}

int dispatch(const std::string& cmd, const RunConfig& cfg, bool as_json, std::ostream& out,
             std::ostream& err) {
  if (cmd == "models") return cmd_models(as_json, out);
  if (cmd == "variance") return cmd_variance(cfg, out, err);
  if (cmd == "simulate") return cmd_simulate(cfg, out, err);
  if (cmd == "clt") return cmd_clt(cfg, out, err);
  if (cmd == "check") return cmd_check(cfg, out, err);
  if (cmd == "contraction") return cmd_contraction(cfg, out, err);
  return cmd_report(cfg, out, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and CLT diagnostics for self-similar Gaussian processes", "ssgauss"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersionString));

  Flags fl;
  auto* o_config = app.add_option("--config", fl.config, "JSON config file")
                       ->check(CLI::ExistingFile);
  auto* o_model = app.add_option("--model", fl.model, "fbm|bifbm|subfbm|swanson|dw-z1|dw-z2");
  auto* o_H = app.add_option("--H", fl.H, "Hurst parameter");
  auto* o_K = app.add_option("--K", fl.K, "bifractional K");
  auto* o_alpha = app.add_option(
      "--alpha", fl.alpha, "Durieu-Wang parameter, or the exponent for `variance`");
  auto* o_f = app.add_option("--f", fl.f, "hermite:q | even_power:p | odd_abs_power:p");
  auto* o_qmax = app.add_option("--q-max", fl.q_max, "Hermite truncation for power families");
  auto* o_n = app.add_option("--n", fl.n, "n or a comma separated ladder")->delimiter(',');
  auto* o_t = app.add_option("--t", fl.t, "comma separated time grid")->delimiter(',');
  auto* o_N = app.add_option("--N", fl.N, "increments to assemble (default floor(n max t))");
  auto* o_M = app.add_option("--M", fl.M, "Monte Carlo replicas");
  auto* o_seed = app.add_option("--seed", fl.seed, "seed (fallback: SSGAUSS_SEED)");
  auto* o_threads = app.add_option("--threads", fl.threads, "worker threads")
                        ->check(CLI::PositiveNumber);
  auto* o_out = app.add_option("--out", fl.out, "output directory");
  auto* o_q = app.add_option("--q", fl.q, "chaos order for `contraction`");
  auto* o_r = app.add_option("--r", fl.r, "contraction index");
  auto* o_xmax = app.add_option("--x-max", fl.x_max, "upper end of the x grid for audits");
  auto* o_grid = app.add_option("--grid-size", fl.grid_size, "points on the x grid");
  auto* o_kmax = app.add_option("--k-max", fl.k_max, "finest s = 2^-k in the lemma audits");
  auto* o_lemma_n = app.add_option("--lemma-n", fl.lemma_n, "grid size for the decay audit");
  auto* o_rtol = app.add_option("--rel-tol", fl.rel_tol, "relative tolerance for sigma_q^2");
  auto* o_boot = app.add_option("--bootstrap", fl.bootstrap, "bootstrap resamples");
  auto* o_pairs = app.add_flag("--all-pairs", fl.all_pairs, "cross statistics for every pair");
  app.add_flag("--print-config", fl.print_config, "print the resolved config and exit");
  app.add_flag("--json", fl.as_json, "machine-readable output for `models`");

  for (const char* name : {"models", "variance", "simulate", "clt", "check", "contraction", "report"}) {
    app.add_subcommand(name);
  }
  app.get_subcommand("models")->description("list models and their exponents");
  app.get_subcommand("variance")->description("limit variance sigma^2, writes variance.json");
  app.get_subcommand("simulate")->description("draw increment rows, writes batch.bin");
  app.get_subcommand("clt")->description("Monte Carlo CLT experiment, writes experiment.json and summary.csv");
  app.get_subcommand("check")->description("hypothesis and lemma audits, writes reports/check.json");
  app.get_subcommand("contraction")->description("contraction norms, writes reports/contraction.json");
  app.get_subcommand("report")->description("summarize the outputs found under --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    RunConfig cfg;
    if (const auto s = env_seed()) cfg.seed = *s;
    if (o_config->count() > 0) {
      std::ifstream is(fl.config);
      json j;
      try {
        j = json::parse(is);
      } catch (const json::exception& e) {
        throw DomainError("cannot parse " + fl.config + ": " + e.what());
      }
      apply_json(cfg, j);
    }
    cfg.command = cmd;
    if (o_model->count() > 0 && fl.model != cfg.model) {
      cfg.model = fl.model;
      cfg.params.clear();
    }
    if (o_H->count() > 0) cfg.params["H"] = fl.H;
    if (o_K->count() > 0) cfg.params["K"] = fl.K;
    if (o_alpha->count() > 0) {
      bool is_param = false;
      for (const auto& p : find_model(cfg.model).parameters) is_param = is_param || p.name == "alpha";
      if (is_param) {
        cfg.params["alpha"] = fl.alpha;
      } else if (cmd == "variance") {
        cfg.alpha = fl.alpha;
      } else {
        throw DomainError("--alpha applies to `variance` or to the dw-z1/dw-z2 models");
      }
    }
    if (o_f->count() > 0) cfg.f = parse_f_spec(fl.f);
    if (o_qmax->count() > 0) cfg.q_max = fl.q_max;
    if (o_n->count() > 0) cfg.n = fl.n;
    if (o_t->count() > 0) cfg.t_grid = fl.t;
    if (o_N->count() > 0) cfg.N = fl.N;
    if (o_M->count() > 0) cfg.M = fl.M;
    if (o_seed->count() > 0) cfg.seed = fl.seed;
    if (o_threads->count() > 0) cfg.threads = fl.threads;
    if (o_out->count() > 0) cfg.out = fl.out;
    if (o_q->count() > 0) cfg.q = fl.q;
    if (o_r->count() > 0) cfg.r = fl.r;
    if (o_xmax->count() > 0) cfg.x_max = fl.x_max;
    if (o_grid->count() > 0) cfg.grid_size = fl.grid_size;
    if (o_kmax->count() > 0) cfg.k_max = fl.k_max;
    if (o_lemma_n->count() > 0) cfg.lemma_n = fl.lemma_n;
    if (o_rtol->count() > 0) cfg.rel_tol = fl.rel_tol;
    if (o_boot->count() > 0) cfg.bootstrap_resamples = fl.bootstrap;
    if (o_pairs->count() > 0) cfg.all_pairs = fl.all_pairs;
    resolve(cfg);

    if (fl.print_config) {
      out << to_json(cfg).dump(2) << '\n';
      return kExitPass;
    }
    return dispatch(cmd, cfg, fl.as_json, out, err);
  } catch (const GateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitGate;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ssgauss::cli
