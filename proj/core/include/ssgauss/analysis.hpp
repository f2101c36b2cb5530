#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssgauss/covgrid.hpp"
#include "ssgauss/hermite.hpp"
#include "ssgauss/models.hpp"

namespace ssgauss {

struct BoundPoint {
  std::vector<double> coords;
  double parameter = 0.0;  // the asymptotic variable used for the trend fit
  double quantity = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};

/// Audit of an inequality |quantity| <= C envelope on a grid. The verdict
/// passes iff the sup of the ratio is finite and the log-log slope of the
/// ratio against the asymptotic parameter over its top decade is at most
/// slope_tol.
struct BoundCheckReport {
  std::string target;
  std::string description;
  std::string envelope;
  std::vector<std::string> coord_names;
  std::vector<BoundPoint> points;
  double ratio_sup = 0.0;
  double trend_slope = 0.0;
  double fitted_C = 0.0;
  double max_abs_quantity = 0.0;
  bool informational = false;  // reported, never fails
  bool verdict = false;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
};

struct AuditOptions {
  double x_max = 1e4;
  int grid_size = 160;
  double slope_tol = 0.05;
  /// |quantity| at or below this is treated as an exact zero
  double zero_floor = 1e-13;
  int k_min = 3;  // s = 2^{-k}
  int k_max = 20;
  int lemma_n = 729;
  unsigned threads = 1;
};

/// Growth of psi' and psi'' on 1 < x <= x_max and the identity
/// psi'(1) = beta psi(1) (binding only when alpha >= 1).
std::vector<BoundCheckReport> check_h1(const ModelSpec& model, const AuditOptions& opts = {});
/// Decay of phi' and phi'' on 2 <= x <= x_max.
std::vector<BoundCheckReport> check_h2(const ModelSpec& model, const AuditOptions& opts = {});
/// Remainder of E[(X_{t+s}-X_t)^2] after 2 lambda t^{2beta-alpha} s^alpha,
/// t = 1, s = 2^{-k}.
BoundCheckReport check_lemma31(const ModelSpec& model, const AuditOptions& opts = {});
/// Remainders for adjacent increments and for increments separated by t - r.
std::vector<BoundCheckReport> check_lemma32(const ModelSpec& model, const AuditOptions& opts = {});
/// |E[dX_j dX_k]| on the n-grid for 3k <= j <= n-1.
BoundCheckReport check_lemma51(const ModelSpec& model, const AuditOptions& opts = {});
/// All of the above.
std::vector<BoundCheckReport> check_all(const ModelSpec& model, const AuditOptions& opts = {});

/// (c_q^4 / n^2) trace((A B)^2) with A = rho^{.r}, B = rho^{.(q-r)} on the
/// indices below floor(n t).
double contraction_norm(const IncrementCovariance& ic, int q, int r, double c_q, double t);

/// Total-variation estimate for f = H_q from the unsymmetrized contractions.
double tv_bound(const IncrementCovariance& ic, double alpha, int q, double t);
/// As above; throws DomainError unless f is a single Hermite polynomial.
double tv_bound(const IncrementCovariance& ic, double alpha, const HermiteFunction& f, double t);

struct ContractionReport {
  std::string model_label;
  int q = 0;
  int r = 0;
  double t = 1.0;
  std::vector<int> n_values;
  std::vector<double> norms;
  std::vector<double> tv_bounds;
  bool strictly_decreasing = false;
  bool halved = false;  // last norm < first / 2
  bool verdict() const { return strictly_decreasing && halved; }
};

/// Throws GateError when alpha >= 2 - 1/q.
ContractionReport contraction_report(const ModelSpec& model, int q, int r,
                                     const std::vector<int>& n_values, double t = 1.0,
                                     unsigned threads = 1);

}  // namespace ssgauss
