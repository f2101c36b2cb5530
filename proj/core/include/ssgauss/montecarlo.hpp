#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssgauss/covgrid.hpp"
#include "ssgauss/hermite.hpp"
#include "ssgauss/models.hpp"

namespace ssgauss {

/// floor(n t), guarded against t values like 0.3 that are not exact in binary.
int grid_steps(int n, double t);

/// F_n(t) = n^{-1/2} sum_{j < floor(nt)} f(Y_j); zero when floor(nt) < 1.
/// Throws GridError if floor(nt) exceeds the row length.
double functional(std::span<const double> normalized_row, const HermiteFunction& f, int n,
                  double t);

/// E[F_n(t)^2] = sum_q q! c_q^2 n^{-1} sum_{j,k < floor(nt)} rho_{jk}^q.
double exact_variance(const IncrementCovariance& ic, const HermiteFunction& f, double t);
double exact_variance(const ModelSpec& model, const HermiteFunction& f, int n, double t,
                      unsigned threads = 1);

/// E[(F(b1)-F(a1))(F(b2)-F(a2))] for the same oracle; times must lie on the grid.
double exact_cross_covariance(const IncrementCovariance& ic, const HermiteFunction& f, double a1,
                              double b1, double a2, double b2);

struct Tolerances {
  double variance_se = 4.0;
  double kurtosis_se = 5.0;
  double ks_p_min = 1e-3;
  double cross_se = 4.0;
};

struct TimeStats {
  double t = 0.0;
  int steps = 0;
  double exact_var = 0.0;
  double predicted_var = 0.0;  // sigma^2 t, NaN when unavailable
  double mean = 0.0;
  double mean_se = 0.0;
  double sample_var = 0.0;  // E[F^2] estimated about the known mean 0
  double var_se = 0.0;
  double fourth_moment = 0.0;
  double kurtosis_ratio = 0.0;
  double kurtosis_se = 0.0;
  double ks_stat = 0.0;
  double ks_p = 1.0;
};

struct CrossStats {
  // G over (a0, a1] against G over (b0, b1]
  double a0 = 0.0, a1 = 0.0, b0 = 0.0, b1 = 0.0;
  double exact = 0.0;
  double value = 0.0;
  double se = 0.0;
};

struct TimeVerdict {
  bool variance = false;
  bool kurtosis = false;
  bool ks = false;
  bool all() const { return variance && kurtosis && ks; }
};

TimeVerdict judge(const TimeStats& s, const Tolerances& tol);
bool judge(const CrossStats& c, const Tolerances& tol);

struct ExperimentOptions {
  unsigned threads = 1;
  int bootstrap_resamples = 200;
  bool all_pairs = false;  // cross statistics for every pair of grid cells
  Tolerances tol;
};

struct ExperimentResult {
  std::string model_label;
  std::string f_label;
  int n = 0;
  int N = 0;
  std::vector<double> t_grid;
  int M = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double sigma_sq = 0.0;  // NaN when the limit variance could not be certified
  double jitter = 0.0;
  std::vector<TimeStats> times;
  std::vector<CrossStats> cross;
  std::vector<std::string> warnings;
  Tolerances tol;

  bool passed() const;
};

inline constexpr int kMinReplicas = 100;

/// Simulates M paths on the grid up to max(t_grid), evaluates F_n at every
/// grid time and collects the statistics. Throws GateError before any
/// simulation if rank(f) < 2 or alpha >= 2 - 1/rank(f).
ExperimentResult run_experiment(const ModelSpec& model, const HermiteFunction& f, int n,
                                const std::vector<double>& t_grid, int M, std::uint64_t seed,
                                const ExperimentOptions& opts = {});

}  // namespace ssgauss
