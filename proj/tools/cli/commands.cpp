#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "ssgauss/errors.hpp"
#include "ssgauss/sampler.hpp"
#include "ssgauss/version.hpp"

namespace fs = std::filesystem;

namespace ssgauss::cli {

json envelope(const RunConfig& cfg) {
  json j;
  j["version"] = kVersionString;
  j["config"] = to_json(cfg);
  return j;
}

json to_json(const LimitVariance& lv) {
  json j;
  j["alpha"] = lv.alpha;
  json per = json::object();
  json tails = json::object();
  for (const auto& [q, s] : lv.per_chaos) {
    per[std::to_string(q)] = {{"value", s.value},
                              {"tail_bound", s.tail_bound},
                              {"error_bound", s.error_bound},
                              {"M_used", s.M_used}};
    tails[std::to_string(q)] = s.tail_bound;
  }
  j["per_chaos"] = per;
  j["sigma_sq"] = lv.sigma_sq;
  j["error_bound"] = lv.error_bound;
  j["tails"] = tails;
  j["warnings"] = lv.warnings;
  return j;
}

json to_json(const ExperimentResult& res) {
  json j;
  j["model"] = res.model_label;
  j["f"] = res.f_label;
  j["n"] = res.n;
  j["N"] = res.N;
  j["t_grid"] = res.t_grid;
  j["M"] = res.M;
  j["seed"] = res.seed;
  j["alpha"] = res.alpha;
  j["sigma_sq"] = res.sigma_sq;
  j["jitter"] = res.jitter;
  j["tolerances"] = {{"variance_se", res.tol.variance_se},
                     {"kurtosis_se", res.tol.kurtosis_se},
                     {"ks_p_min", res.tol.ks_p_min},
                     {"cross_se", res.tol.cross_se}};
  json times = json::array();
  for (const auto& s : res.times) {
    const TimeVerdict v = judge(s, res.tol);
    times.push_back({{"t", s.t},
                     {"steps", s.steps},
                     {"exact_var", s.exact_var},
                     {"predicted_var", s.predicted_var},
                     {"mean", s.mean},
                     {"mean_se", s.mean_se},
                     {"sample_var", s.sample_var},
                     {"var_se", s.var_se},
                     {"fourth_moment", s.fourth_moment},
                     {"kurtosis_ratio", s.kurtosis_ratio},
                     {"kurtosis_se", s.kurtosis_se},
                     {"ks_stat", s.ks_stat},
                     {"ks_p", s.ks_p},
                     {"verdict",
                      {{"variance", v.variance}, {"kurtosis", v.kurtosis}, {"ks", v.ks}}}});
  }
  j["times"] = times;
  json cross = json::array();
  for (const auto& c : res.cross) {
    cross.push_back({{"a", {c.a0, c.a1}},
                     {"b", {c.b0, c.b1}},
                     {"exact", c.exact},
                     {"value", c.value},
                     {"se", c.se},
                     {"verdict", judge(c, res.tol)}});
  }
  j["cross"] = cross;
  j["warnings"] = res.warnings;
  j["passed"] = res.passed();
  return j;
}

json to_json(const BoundCheckReport& rep) {
  json j;
  j["target"] = rep.target;
  j["description"] = rep.description;
  j["envelope"] = rep.envelope;
  j["coord_names"] = rep.coord_names;
  j["ratio_sup"] = rep.ratio_sup;
  j["trend_slope"] = rep.trend_slope;
  j["fitted_C"] = rep.fitted_C;
  j["max_abs_quantity"] = rep.max_abs_quantity;
  j["informational"] = rep.informational;
  j["verdict"] = rep.verdict;
  j["diagnostics"] = rep.diagnostics;
  j["notes"] = rep.notes;
  json pts = json::array();
  for (const auto& p : rep.points) {
    pts.push_back({{"coords", p.coords},
                   {"parameter", p.parameter},
                   {"quantity", p.quantity},
                   {"envelope", p.envelope},
                   {"ratio", p.ratio}});
  }
  j["points"] = pts;
  return j;
}

json to_json(const ContractionReport& rep) {
  json j;
  j["model"] = rep.model_label;
  j["q"] = rep.q;
  j["r"] = rep.r;
  j["t"] = rep.t;
  j["n_values"] = rep.n_values;
  j["norms"] = rep.norms;
  j["tv_bounds"] = rep.tv_bounds;
  j["strictly_decreasing"] = rep.strictly_decreasing;
  j["halved"] = rep.halved;
  j["verdict"] = rep.verdict();
  return j;
}

void write_json(const fs::path& path, const json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw DomainError("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, mode);
  if (!os) throw DomainError("cannot write " + path.string());
  return os;
}

double max_t(const RunConfig& cfg) { return *std::max_element(cfg.t_grid.begin(), cfg.t_grid.end()); }

// N from the config, checked against floor(n max t)
int increments_needed(const RunConfig& cfg, int n) {
  const int need = grid_steps(n, max_t(cfg));
  if (!cfg.N) return need;
  if (need > *cfg.N) {
    throw GridError("floor(n t) = " + std::to_string(need) + " exceeds N = " +
                    std::to_string(*cfg.N) + " for n = " + std::to_string(n));
  }
  return *cfg.N;
}

int single_n(const RunConfig& cfg) {
  if (cfg.n.size() != 1) {
    throw DomainError(cfg.command + " takes a single n, got " + std::to_string(cfg.n.size()));
  }
  return cfg.n.front();
}

AuditOptions audit_options(const RunConfig& cfg) {
  AuditOptions o;
  o.x_max = cfg.x_max;
  o.grid_size = cfg.grid_size;
  o.k_max = cfg.k_max;
  o.lemma_n = cfg.lemma_n;
  o.threads = cfg.threads;
  return o;
}

}  // namespace

int cmd_models(bool as_json, std::ostream& out) {
  if (as_json) {
    json arr = json::array();
    for (const auto& t : list_models()) {
      json params = json::array();
      for (const auto& p : t.parameters) {
        params.push_back({{"name", p.name},
                          {"lower", p.lower},
                          {"upper", p.upper},
                          {"upper_inclusive", p.upper_inclusive},
                          {"default", p.default_value}});
      }
      const ModelSpec m = t.instantiate();
      json ex = {{"alpha", m.alpha()}, {"beta", m.beta()}, {"lambda", m.lambda()}};
      ex["nu"] = m.nu() ? json(*m.nu()) : json(nullptr);
      arr.push_back({{"id", t.id},
                     {"description", t.description},
                     {"parameters", params},
                     {"alpha", t.alpha},
                     {"beta", t.beta},
                     {"lambda", t.lambda},
                     {"nu", t.nu},
                     {"default_instance", ex}});
    }
    json j;
    j["version"] = kVersionString;
    j["models"] = arr;
    out << j.dump(2) << '\n';
    return kExitPass;
  }
  for (const auto& t : list_models()) {
    out << t.id << " α=" << t.alpha << " β=" << t.beta << " ν=" << t.nu << " λ=" << t.lambda;
    if (!t.parameters.empty()) {
      out << "  [";
      for (std::size_t i = 0; i < t.parameters.size(); ++i) {
        const auto& p = t.parameters[i];
        out << (i ? ", " : "") << p.name << " in (" << p.lower << ", " << p.upper
            << (p.upper_inclusive ? "]" : ")") << " default " << p.default_value;
      }
      out << "]";
    }
    out << "  " << t.description << '\n';
  }
  return kExitPass;
}

int cmd_variance(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const HermiteFunction f = make_function(cfg);
  const double alpha = cfg.alpha ? *cfg.alpha : make_model(cfg).alpha();
  const LimitVariance lv = sigma_sq(f, alpha, cfg.rel_tol);

  json j = envelope(cfg);
  j["f"] = f.label();
  j["f_chaos_tail"] = f.chaos_tail();
  j.update(to_json(lv));
  write_json(fs::path(cfg.out) / "variance.json", j);

  out << std::setprecision(15);
  out << f.label() << " alpha=" << alpha << '\n';
  for (const auto& [q, s] : lv.per_chaos) {
    out << "  q=" << q << " c_q=" << f.coeff(q) << " sigma_q^2=" << s.value
        << " error<=" << s.error_bound << '\n';
  }
  out << "sigma^2=" << lv.sigma_sq << " error<=" << lv.error_bound << '\n';
  return kExitPass;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ModelSpec model = make_model(cfg);
  const int n = single_n(cfg);
  const int N = increments_needed(cfg, n);
  const SampleBatch batch = sample_batch(model, n, N, cfg.M, cfg.seed, cfg.threads);

  const fs::path dir(cfg.out);
  {
    std::ofstream os = open_out(dir / "batch.bin", std::ios::binary);
    write_binary(os, batch);
  }
  json j = envelope(cfg);
  j["model"] = model.label();
  j["n"] = n;
  j["N"] = N;
  j["M"] = cfg.M;
  j["seed"] = cfg.seed;
  j["jitter"] = batch.jitter;
  j["file"] = "batch.bin";
  j["layout"] = "little-endian uint64 header {n, N, M, seed}, then M x N float64 row-major";
  write_json(dir / "simulate.json", j);
  out << "wrote " << cfg.M << " x " << N << " increments of " << model.label() << " to "
      << (dir / "batch.bin").string() << '\n';
  return kExitPass;
}

int cmd_clt(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec model = make_model(cfg);
  const HermiteFunction f = make_function(cfg);
  const int n = single_n(cfg);
  increments_needed(cfg, n);
  ExperimentOptions opts;
  opts.threads = cfg.threads;
  opts.bootstrap_resamples = cfg.bootstrap_resamples;
  opts.all_pairs = cfg.all_pairs;
  opts.tol = cfg.tol;
  const ExperimentResult res = run_experiment(model, f, n, cfg.t_grid, cfg.M, cfg.seed, opts);

  const fs::path dir(cfg.out);
  json j = envelope(cfg);
  j["result"] = to_json(res);
  write_json(dir / "experiment.json", j);
  {
    std::ofstream os = open_out(dir / "summary.csv");
    os << "t,exact_var,sample_var,se,kurtosis_ratio,ks_stat,ks_p\n" << std::setprecision(17);
    for (const auto& s : res.times) {
      os << s.t << ',' << s.exact_var << ',' << s.sample_var << ',' << s.var_se << ','
         << s.kurtosis_ratio << ',' << s.ks_stat << ',' << s.ks_p << '\n';
    }
  }

  for (const auto& w : res.warnings) err << "warning: " << w << '\n';
  out << res.model_label << ' ' << res.f_label << " n=" << n << " M=" << res.M
      << " sigma^2=" << res.sigma_sq << '\n';
  out << std::setprecision(6);
  for (const auto& s : res.times) {
    const TimeVerdict v = judge(s, res.tol);
    out << "  t=" << s.t << " exact=" << s.exact_var << " sample=" << s.sample_var << " +- "
        << s.var_se << " kurt=" << s.kurtosis_ratio << " +- " << s.kurtosis_se
        << " ks_p=" << s.ks_p << (v.all() ? "  ok" : "  FAIL") << '\n';
  }
  for (const auto& c : res.cross) {
    out << "  cov(G(" << c.a0 << "," << c.a1 << "], G(" << c.b0 << "," << c.b1
        << "])=" << c.value << " +- " << c.se << (judge(c, res.tol) ? "  ok" : "  FAIL") << '\n';
  }
  out << (res.passed() ? "PASS" : "FAIL") << '\n';
  return res.passed() ? kExitPass : kExitFail;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelSpec model = make_model(cfg);
  const HermiteFunction f = make_function(cfg);
  const int d = f.rank();
  if (d < 2 || !gate_allows(model.alpha(), d)) {
    err << "warning: theorem gate fails for " << f.label() << ": need d >= 2 and alpha < 2 - 1/d, "
        << "got d = " << d << ", alpha = " << model.alpha() << " >= " << 2.0 - 1.0 / d << '\n';
  }
  const std::vector<BoundCheckReport> reports = check_all(model, audit_options(cfg));

  json j = envelope(cfg);
  j["model"] = model.label();
  j["exponents"] = {{"alpha", model.alpha()}, {"beta", model.beta()}, {"lambda", model.lambda()}};
  j["exponents"]["nu"] = model.nu() ? json(*model.nu()) : json(nullptr);
  json arr = json::array();
  bool all = true;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    all = all && r.verdict;
  }
  j["reports"] = arr;
  j["passed"] = all;
  write_json(fs::path(cfg.out) / "reports" / "check.json", j);

  out << model.label() << '\n';
  for (const auto& r : reports) {
    out << "  " << std::left << std::setw(24) << r.target << std::right
        << (r.informational ? " info" : (r.verdict ? " PASS" : " FAIL"))
        << "  sup=" << r.ratio_sup << " slope=" << r.trend_slope << '\n';
    for (const auto& note : r.notes) out << "    note: " << note << '\n';
  }
  out << (all ? "PASS" : "FAIL") << '\n';
  return all ? kExitPass : kExitFail;
}

int cmd_contraction(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ModelSpec model = make_model(cfg);
  const ContractionReport rep =
      contraction_report(model, cfg.q, cfg.r, cfg.n, max_t(cfg), cfg.threads);

  json j = envelope(cfg);
  j.update(to_json(rep));
  write_json(fs::path(cfg.out) / "reports" / "contraction.json", j);

  out << rep.model_label << " q=" << rep.q << " r=" << rep.r << " t=" << rep.t << '\n'
      << std::setprecision(10);
  for (std::size_t i = 0; i < rep.n_values.size(); ++i) {
    out << "  n=" << rep.n_values[i] << " norm=" << rep.norms[i] << " tv<=" << rep.tv_bounds[i]
        << '\n';
  }
  out << (rep.verdict() ? "PASS" : "FAIL") << '\n';
  return rep.verdict() ? kExitPass : kExitFail;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const fs::path dir(cfg.out);
  std::vector<fs::path> files;
  for (const char* name : {"variance.json", "experiment.json", "simulate.json"}) {
    if (fs::exists(dir / name)) files.push_back(dir / name);
  }
  if (fs::is_directory(dir / "reports")) {
    std::vector<fs::path> reports;
    for (const auto& e : fs::directory_iterator(dir / "reports")) {
      if (e.path().extension() == ".json" && e.path().filename() != "index.json") {
        reports.push_back(e.path());
      }
    }
    std::sort(reports.begin(), reports.end());
    files.insert(files.end(), reports.begin(), reports.end());
  }
  if (files.empty()) throw DomainError("no outputs found under " + dir.string());

  json index = envelope(cfg);
  json entries = json::array();
  bool all = true;
  for (const auto& p : files) {
    std::ifstream is(p);
    json doc;
    try {
      doc = json::parse(is);
    } catch (const json::exception& e) {
      err << "warning: skipping " << p.string() << ": " << e.what() << '\n';
      continue;
    }
    json entry = {{"file", fs::relative(p, dir).generic_string()}};
    entry["command"] = doc.contains("config") ? doc["config"].value("command", "") : "";
    entry["version"] = doc.value("version", "");
    json passed = nullptr;
    if (doc.contains("passed")) passed = doc["passed"];
    else if (doc.contains("verdict")) passed = doc["verdict"];
    else if (doc.contains("result")) passed = doc["result"].value("passed", false);
    entry["passed"] = passed;
    if (passed.is_boolean() && !passed.get<bool>()) all = false;
    if (doc.contains("sigma_sq")) entry["sigma_sq"] = doc["sigma_sq"];
    entries.push_back(entry);

    out << std::left << std::setw(28) << entry["file"].get<std::string>() << std::right << ' '
        << (passed.is_null() ? "-" : (passed.get<bool>() ? "PASS" : "FAIL"));
    if (doc.contains("sigma_sq")) out << "  sigma^2=" << doc["sigma_sq"].dump();
    out << '\n';
  }
  index["entries"] = entries;
  index["passed"] = all;
  write_json(dir / "reports" / "index.json", index);
  return all ? kExitPass : kExitFail;
}

}  // namespace ssgauss::cli
