#include "cli/run_config.hpp"

#include <set>

#include "ssgauss/errors.hpp"

namespace ssgauss::cli {

FSpec parse_f_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("f spec must look like hermite:q, even_power:p or odd_abs_power:p, got '" +
                      text + "'");
  }
  FSpec f;
  f.kind = text.substr(0, colon);
  if (f.kind != "hermite" && f.kind != "even_power" && f.kind != "odd_abs_power") {
    throw DomainError("unknown function family '" + f.kind + "'");
  }
  std::size_t used = 0;
  const std::string digits = text.substr(colon + 1);
  try {
    f.index = std::stoi(digits, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != digits.size()) throw DomainError("bad index in f spec '" + text + "'");
  return f;
}

std::string to_string(const FSpec& f) { return f.kind + ":" + std::to_string(f.index); }

namespace {

json f_to_json(const FSpec& f) {
  json j;
  j["f"] = f.kind;
  j[f.kind == "hermite" ? "q" : "p"] = f.index;
  return j;
}

FSpec f_from_json(const json& j) {
  if (j.is_string()) return parse_f_spec(j.get<std::string>());
  FSpec f;
  f.kind = j.at("f").get<std::string>();
  const char* key = f.kind == "hermite" ? "q" : "p";
  for (const auto& [k, v] : j.items()) {
    if (k != "f" && k != key) throw DomainError("unexpected key '" + k + "' in f spec");
  }
  return parse_f_spec(f.kind + ":" + std::to_string(j.at(key).get<int>()));
}

json tol_to_json(const Tolerances& t) {
  return {{"variance_se", t.variance_se},
          {"kurtosis_se", t.kurtosis_se},
          {"ks_p_min", t.ks_p_min},
          {"cross_se", t.cross_se}};
}

void tol_from_json(Tolerances& t, const json& j) {
  for (const auto& [k, v] : j.items()) {
    if (k == "variance_se") t.variance_se = v.get<double>();
    else if (k == "kurtosis_se") t.kurtosis_se = v.get<double>();
    else if (k == "ks_p_min") t.ks_p_min = v.get<double>();
    else if (k == "cross_se") t.cross_se = v.get<double>();
    else throw DomainError("unknown tolerance '" + k + "'");
  }
}

}  // namespace

json to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  json m;
  m["model"] = cfg.model;
  for (const auto& [k, v] : cfg.params) m[k] = v;
  j["model"] = m;
  j["alpha"] = cfg.alpha ? json(*cfg.alpha) : json(nullptr);
  j["f"] = f_to_json(cfg.f);
  j["q_max"] = cfg.q_max ? json(*cfg.q_max) : json(nullptr);
  j["n"] = cfg.n;
  j["t_grid"] = cfg.t_grid;
  j["N"] = cfg.N ? json(*cfg.N) : json(nullptr);
  j["M"] = cfg.M;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["out"] = cfg.out;
  j["q"] = cfg.q;
  j["r"] = cfg.r;
  j["x_max"] = cfg.x_max;
  j["grid_size"] = cfg.grid_size;
  j["k_max"] = cfg.k_max;
  j["lemma_n"] = cfg.lemma_n;
  j["rel_tol"] = cfg.rel_tol;
  j["bootstrap_resamples"] = cfg.bootstrap_resamples;
  j["all_pairs"] = cfg.all_pairs;
  j["tolerances"] = tol_to_json(cfg.tol);
  return j;
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "command") {
        cfg.command = v.get<std::string>();
      } else if (k == "model") {
        if (v.is_string()) {
          cfg.model = v.get<std::string>();
          cfg.params.clear();
          continue;
        }
        cfg.model = v.at("model").get<std::string>();
        cfg.params.clear();
        for (const auto& [pk, pv] : v.items()) {
          if (pk != "model") cfg.params[pk] = pv.get<double>();
        }
      } else if (k == "alpha") {
        cfg.alpha = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      } else if (k == "f") {
        cfg.f = f_from_json(v);
      } else if (k == "q_max") {
        cfg.q_max = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
      } else if (k == "n") {
        cfg.n = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
      } else if (k == "t_grid") {
        cfg.t_grid = v.get<std::vector<double>>();
      } else if (k == "N") {
        cfg.N = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
      } else if (k == "M") {
        cfg.M = v.get<int>();
      } else if (k == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (k == "threads") {
        cfg.threads = v.get<unsigned>();
      } else if (k == "out") {
        cfg.out = v.get<std::string>();
      } else if (k == "q") {
        cfg.q = v.get<int>();
      } else if (k == "r") {
        cfg.r = v.get<int>();
      } else if (k == "x_max") {
        cfg.x_max = v.get<double>();
      } else if (k == "grid_size") {
        cfg.grid_size = v.get<int>();
      } else if (k == "k_max") {
        cfg.k_max = v.get<int>();
      } else if (k == "lemma_n") {
        cfg.lemma_n = v.get<int>();
      } else if (k == "rel_tol") {
        cfg.rel_tol = v.get<double>();
      } else if (k == "bootstrap_resamples") {
        cfg.bootstrap_resamples = v.get<int>();
      } else if (k == "all_pairs") {
        cfg.all_pairs = v.get<bool>();
      } else if (k == "tolerances") {
        tol_from_json(cfg.tol, v);
      } else {
        throw DomainError("unknown config key '" + k + "'");
      }
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed config: ") + e.what());
  }
}

RunConfig from_json(const json& j) {
  RunConfig cfg;
  apply_json(cfg, j);
  return cfg;
}

void resolve(RunConfig& cfg) {
  const ModelTemplate& tpl = find_model(cfg.model);
  std::set<std::string, std::less<>> known;
  for (const auto& p : tpl.parameters) {
    known.insert(p.name);
    if (!cfg.params.contains(p.name)) cfg.params[p.name] = p.default_value;
  }
  for (const auto& [k, v] : cfg.params) {
    if (!known.contains(k)) {
      throw DomainError("model '" + cfg.model + "' has no parameter '" + k + "'");
    }
  }
  if (cfg.n.empty()) {
    if (cfg.command == "contraction") cfg.n = {64, 128, 256, 512};
    else cfg.n = {512};
  }
  if (cfg.t_grid.empty()) {
    if (cfg.command == "clt") cfg.t_grid = {0.25, 0.5, 0.75, 1.0};
    else cfg.t_grid = {1.0};
  }
  if (cfg.threads == 0) throw DomainError("threads must be at least 1");
}

ModelSpec make_model(const RunConfig& cfg) { return ModelSpec::from_id(cfg.model, cfg.params); }

HermiteFunction make_function(const RunConfig& cfg) {
  const int q_max = cfg.q_max.value_or(-1);
  if (cfg.f.kind == "hermite") {
    if (cfg.f.index < 1) throw DomainError("hermite:q needs q >= 1");
    return builtin_family(BuiltinKind::single_hermite, cfg.f.index, q_max);
  }
  if (cfg.f.kind == "even_power") return builtin_family(BuiltinKind::even_power, cfg.f.index, q_max);
  return builtin_family(BuiltinKind::odd_abs_power, cfg.f.index, q_max);
}

}  // namespace ssgauss::cli
