#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssgauss/hermite.hpp"

namespace ssgauss {

/// A(m; alpha) = |m+1|^alpha + |m-1|^alpha - 2|m|^alpha.
double second_difference(long long m, double alpha);

struct SigmaQ {
  int q = 0;
  double value = 0.0;
  /// Bound on the magnitude of the omitted tail 2^{-q} q! sum_{|m|>M} A(m)^q.
  double tail_bound = 0.0;
  /// Bound on |value - exact|; the tail is estimated, not dropped.
  double error_bound = 0.0;
  long long M_used = 0;
};

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr long long kMaxTruncation = 10'000'000;

/// True iff q (alpha - 2) + 1 < 0, i.e. alpha < 2 - 1/q.
bool gate_allows(double alpha, int q);

/// sigma_q^2 = 2^{-q} q! sum_{m in Z} A(m; alpha)^q. The partial sum over
/// |m| <= M is completed by an estimate of the tail between certified lower
/// and upper bounds; M doubles from 64 until the error bound is at most
/// rel_tol |value|. Throws GateError outside the gate and NumericalError if
/// M would exceed kMaxTruncation.
SigmaQ sigma_q_sq(double alpha, int q, double rel_tol = kDefaultRelTol);

struct LimitVariance {
  double alpha = 0.0;
  std::map<int, SigmaQ> per_chaos;
  double sigma_sq = 0.0;
  /// sum_q c_q^2 error_bound_q
  double error_bound = 0.0;
  std::vector<std::string> warnings;
};

/// sigma^2 = sum_q c_q^2 sigma_q^2 over the coefficients present in f.
/// Throws GateError if rank(f) < 2 or alpha >= 2 - 1/rank(f).
LimitVariance sigma_sq(const HermiteFunction& f, double alpha, double rel_tol = kDefaultRelTol);

/// Throws GateError with the violated condition spelled out.
void require_gate(const HermiteFunction& f, double alpha);

}  // namespace ssgauss
