#include "ssgauss/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssgauss/detail/numeric.hpp"
#include "ssgauss/detail/parallel.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/limitvar.hpp"
#include "ssgauss/sampler.hpp"
#include "ssgauss/stats.hpp"

namespace ssgauss {

int grid_steps(int n, double t) {
  if (!(t >= 0.0)) throw DomainError("times must be non-negative");
  return static_cast<int>(std::floor(n * t + 1e-9));
}

double functional(std::span<const double> normalized_row, const HermiteFunction& f, int n,
                  double t) {
  const int m = grid_steps(n, t);
  if (m < 1) return 0.0;
  if (m > static_cast<int>(normalized_row.size())) {
    throw GridError("floor(n t) = " + std::to_string(m) + " exceeds the " +
                    std::to_string(normalized_row.size()) + " simulated increments");
  }
  double s = 0.0;
  for (int j = 0; j < m; ++j) s += f(normalized_row[j]);
  return s / std::sqrt(static_cast<double>(n));
}

namespace {

// sum_q q! c_q^2 rho^q
double chaos_kernel(const std::vector<double>& weights, double rho) {
  double p = 1.0;
  double s = 0.0;
  for (std::size_t q = 1; q < weights.size(); ++q) {
    p *= rho;
    if (weights[q] != 0.0) s += weights[q] * p;
  }
  return s;
}

std::vector<double> chaos_weights(const HermiteFunction& f) {
  std::vector<double> w(f.coeffs().size(), 0.0);
  for (std::size_t q = 1; q < w.size(); ++q) {
    const double c = f.coeffs()[q];
    w[q] = std::tgamma(static_cast<double>(q) + 1.0) * c * c;
  }
  return w;
}

int checked_steps(const IncrementCovariance& ic, double t) {
  const int m = grid_steps(ic.n, t);
  if (m > ic.N) {
    throw GridError("floor(n t) = " + std::to_string(m) + " exceeds N = " + std::to_string(ic.N));
  }
  return m;
}

}  // namespace

double exact_variance(const IncrementCovariance& ic, const HermiteFunction& f, double t) {
  const int m = checked_steps(ic, t);
  if (m < 1) return 0.0;
  const std::vector<double> w = chaos_weights(f);
  detail::CompensatedSum s;
  s.add(m * chaos_kernel(w, 1.0));
  for (int j = 1; j < m; ++j) {
    double row = 0.0;
    for (int k = 0; k < j; ++k) row += chaos_kernel(w, ic.corr(j, k));
    s.add(2.0 * row);
  }
  return s.value() / ic.n;
}

double exact_variance(const ModelSpec& model, const HermiteFunction& f, int n, double t,
                      unsigned threads) {
  const int m = grid_steps(n, t);
  if (m < 1) return 0.0;
  return exact_variance(increment_cov(model, n, m, threads), f, t);
}

double exact_cross_covariance(const IncrementCovariance& ic, const HermiteFunction& f, double a1,
                              double b1, double a2, double b2) {
  const int j0 = checked_steps(ic, a1), j1 = checked_steps(ic, b1);
  const int k0 = checked_steps(ic, a2), k1 = checked_steps(ic, b2);
  const std::vector<double> w = chaos_weights(f);
  detail::CompensatedSum s;
  for (int j = j0; j < j1; ++j) {
    double row = 0.0;
    for (int k = k0; k < k1; ++k) row += chaos_kernel(w, ic.corr(j, k));
    s.add(row);
  }
  return s.value() / ic.n;
}

TimeVerdict judge(const TimeStats& s, const Tolerances& tol) {
  TimeVerdict v;
  v.variance = std::abs(s.sample_var - s.exact_var) <= tol.variance_se * s.var_se;
  v.kurtosis = std::abs(s.kurtosis_ratio - 1.0) <= tol.kurtosis_se * s.kurtosis_se;
  v.ks = s.ks_p >= tol.ks_p_min;
  return v;
}

bool judge(const CrossStats& c, const Tolerances& tol) {
  return std::abs(c.value) <= tol.cross_se * c.se;
}

bool ExperimentResult::passed() const {
  for (const auto& s : times) {
    if (!judge(s, tol).all()) return false;
  }
  for (const auto& c : cross) {
    if (!judge(c, tol)) return false;
  }
  return true;
}

ExperimentResult run_experiment(const ModelSpec& model, const HermiteFunction& f, int n,
                                const std::vector<double>& t_grid, int M, std::uint64_t seed,
                                const ExperimentOptions& opts) {
  require_gate(f, model.alpha());
  if (M < kMinReplicas) {
    throw DomainError("M = " + std::to_string(M) + " is below the minimum of " +
                      std::to_string(kMinReplicas) + " replicas");
  }
  if (t_grid.empty()) throw DomainError("t_grid is empty");
  std::vector<double> grid = t_grid;
  std::sort(grid.begin(), grid.end());
  if (std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw DomainError("t_grid has repeated times");
  }
  std::vector<int> steps;
  for (double t : grid) {
    const int m = grid_steps(n, t);
    if (m < 1) throw DomainError("floor(n t) < 1 for t = " + std::to_string(t));
    steps.push_back(m);
  }
  const int N = steps.back();

  ExperimentResult res;
  res.model_label = model.label();
  res.f_label = f.label();
  res.n = n;
  res.N = N;
  res.t_grid = grid;
  res.M = M;
  res.seed = seed;
  res.alpha = model.alpha();
  res.tol = opts.tol;
  try {
    res.sigma_sq = sigma_sq(f, model.alpha()).sigma_sq;
  } catch (const NumericalError& e) {
    res.sigma_sq = std::numeric_limits<double>::quiet_NaN();
    res.warnings.emplace_back(e.what());
  }

  const IncrementCovariance ic = increment_cov(model, n, N, opts.threads);
  const CholeskyFactor factor = cholesky(ic);
  res.jitter = factor.jitter;

  // values[k * M + i] = F_n(t_k) on replica i
  const std::size_t T = grid.size();
  std::vector<double> values(T * static_cast<std::size_t>(M));
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  detail::parallel_for_chunks(static_cast<std::size_t>(M), opts.threads,
                              [&](std::size_t lo, std::size_t hi) {
    std::vector<double> row(static_cast<std::size_t>(N));
    for (std::size_t i = lo; i < hi; ++i) {
      draw(factor, seed, i, row);
      double s = 0.0;
      std::size_t k = 0;
      for (int j = 0; j < N && k < T; ++j) {
        s += f(row[j] / ic.xi[j]);
        while (k < T && steps[k] == j + 1) {
          values[k * M + i] = s * inv_sqrt_n;
          ++k;
        }
      }
    }
  });

  for (std::size_t k = 0; k < T; ++k) {
    const std::span<const double> x(values.data() + k * M, static_cast<std::size_t>(M));
    TimeStats s;
    s.t = grid[k];
    s.steps = steps[k];
    s.exact_var = exact_variance(ic, f, grid[k]);
    s.predicted_var = res.sigma_sq * grid[k];
    const RawMoments mom = raw_moments(x);
    s.mean = mom.mean;
    s.mean_se = mom.mean_se;
    s.sample_var = mom.m2;
    s.var_se = mom.m2_se;
    s.fourth_moment = mom.m4;
    s.kurtosis_ratio = mom.m4 / (3.0 * mom.m2 * mom.m2);
    s.kurtosis_se = bootstrap_kurtosis_se(x, opts.bootstrap_resamples, seed, (1ULL << 40) + k);
    std::vector<double> z(x.begin(), x.end());
    const double scale = 1.0 / std::sqrt(s.exact_var);
    for (double& v : z) v *= scale;
    const KsResult ks = ks_test_normal(z);
    s.ks_stat = ks.statistic;
    s.ks_p = ks.p_value;
    res.times.push_back(s);
  }

  // increments G over consecutive cells (t_{k-1}, t_k], with t_{-1} = 0
  std::vector<double> edges = {0.0};
  edges.insert(edges.end(), grid.begin(), grid.end());
  std::vector<std::vector<double>> G(T, std::vector<double>(static_cast<std::size_t>(M)));
  for (std::size_t k = 0; k < T; ++k) {
    for (int i = 0; i < M; ++i) {
      G[k][i] = values[k * M + i] - (k > 0 ? values[(k - 1) * M + i] : 0.0);
    }
  }
  for (std::size_t a = 0; a < T; ++a) {
    for (std::size_t b = a + 1; b < T; ++b) {
      if (!opts.all_pairs && b != a + 1) continue;
      CrossStats c;
      c.a0 = edges[a];
      c.a1 = edges[a + 1];
      c.b0 = edges[b];
      c.b1 = edges[b + 1];
      const CrossMoment cm = cross_moment(G[a], G[b]);
      c.value = cm.value;
      c.se = cm.se;
      c.exact = exact_cross_covariance(ic, f, edges[a], edges[a + 1], edges[b], edges[b + 1]);
      res.cross.push_back(c);
    }
  }
  return res;
}

}  // namespace ssgauss
