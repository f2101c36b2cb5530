#include "ssgauss/limitvar.hpp"

#include <cmath>
#include <sstream>

#include "ssgauss/detail/numeric.hpp"
#include "ssgauss/errors.hpp"

namespace ssgauss {

double second_difference(long long m, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0,2)");
  const long long a = m < 0 ? -m : m;
  if (a == 0) return 2.0;
  return detail::second_diff_pow(static_cast<double>(a), alpha);
}

bool gate_allows(double alpha, int q) { return q * (alpha - 2.0) + 1.0 < 0.0; }

namespace {

std::string gate_message(double alpha, int q) {
  std::ostringstream os;
  os.precision(10);
  os << "theorem gate violated: need alpha < 2 - 1/d, got alpha = " << alpha << " >= "
     << 2.0 - 1.0 / q << " for d = " << q;
  return os.str();
}

// Bounds on |sum_{m>M} A(m)^q| for alpha != 1. Writing A(m) = alpha(alpha-1)
// E[xi^{alpha-2}] with xi triangular on (m-1, m+1), Jensen and a second-order
// bound on the convex function give
//   a m^{alpha-2} <= |A(m)| <= a m^{alpha-2} (1 + kappa m^{2-alpha}(m-1)^{alpha-4}),
// a = alpha|alpha-1|, kappa = (2-alpha)(3-alpha)/12. The sums of m^p, p < -1,
// are then bracketed by the midpoint and trapezoid integral bounds.
struct TailBracket {
  double lower;
  double upper;
};

TailBracket tail_bracket(double alpha, int q, long long M) {
  const double a = alpha * std::abs(alpha - 1.0);
  const double p = q * (alpha - 2.0);
  const double pp1 = -(p + 1.0);  // > 0 inside the gate
  const double dm = static_cast<double>(M);
  const double aq = std::pow(a, q);
  const double kappa = (2.0 - alpha) * (3.0 - alpha) / 12.0;
  const double eps = kappa * std::pow(dm + 1.0, 2.0 - alpha) * std::pow(dm, alpha - 4.0);
  const double lower = aq * (std::pow(dm + 1.0, p + 1.0) / pp1 + 0.5 * std::pow(dm + 1.0, p));
  const double upper = aq * std::pow(1.0 + eps, q) * std::pow(dm + 0.5, p + 1.0) / pp1;
  return {lower, upper};
}

}  // namespace

SigmaQ sigma_q_sq(double alpha, int q, double rel_tol) {
  if (q < 1) throw DomainError("chaos order q must be >= 1");
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0,2)");
  if (!gate_allows(alpha, q)) throw GateError(gate_message(alpha, q));
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");

  const double factor = std::ldexp(std::tgamma(q + 1.0), -q);
  const double sign = (alpha < 1.0 && q % 2 == 1) ? -1.0 : 1.0;

  detail::CompensatedSum partial;
  long long summed = 0;  // terms m = 1..summed are in `partial`
  for (long long M = 64;; M *= 2) {
    if (M > kMaxTruncation) {
      throw NumericalError("sigma_q^2 certificate not met with M <= 1e7 (alpha = " +
                           std::to_string(alpha) + ", q = " + std::to_string(q) + ")");
    }
    for (long long m = summed + 1; m <= M; ++m) {
      partial.add(std::pow(second_difference(m, alpha), q));
    }
    summed = M;
    SigmaQ out;
    out.q = q;
    out.M_used = M;
    if (alpha == 1.0) {
      out.value = factor * (std::ldexp(1.0, q) + 2.0 * partial.value());
      return out;
    }
    const TailBracket tb = tail_bracket(alpha, q, M);
    const double tail_estimate = sign * 0.5 * (tb.lower + tb.upper);
    out.value = factor * (std::ldexp(1.0, q) + 2.0 * (partial.value() + tail_estimate));
    out.error_bound = factor * (tb.upper - tb.lower);
    out.tail_bound = factor * 2.0 * tb.upper;
    if (out.error_bound <= rel_tol * std::abs(out.value)) return out;
  }
}

void require_gate(const HermiteFunction& f, double alpha) {
  const int d = f.rank();
  if (d < 2) {
    throw GateError("theorem gate violated: Hermite rank d = " + std::to_string(d) +
                    " but d >= 2 is required");
  }
  if (!gate_allows(alpha, d)) throw GateError(gate_message(alpha, d));
}

LimitVariance sigma_sq(const HermiteFunction& f, double alpha, double rel_tol) {
  require_gate(f, alpha);
  LimitVariance lv;
  lv.alpha = alpha;
  detail::CompensatedSum total;
  for (int q = f.rank(); q <= f.q_max(); ++q) {
    const double c = f.coeff(q);
    if (c == 0.0) continue;
    SigmaQ s = sigma_q_sq(alpha, q, rel_tol);
    if (s.value + s.error_bound < 0.0) {
      throw NumericalError("sigma_q^2 is negative beyond its error bound for q = " +
                           std::to_string(q));
    }
    if (q % 2 == 1 && s.value - s.error_bound <= 0.0) {
      lv.warnings.push_back("sigma_" + std::to_string(q) +
                            "^2 is not certified positive (value within error bound of 0)");
    }
    total.add(c * c * s.value);
    lv.error_bound += c * c * s.error_bound;
    lv.per_chaos.emplace(q, s);
  }
  lv.sigma_sq = total.value();
  return lv;
}

}  // namespace ssgauss
