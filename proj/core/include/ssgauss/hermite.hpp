#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ssgauss {

/// Probabilists' Hermite polynomial H_q(x).
double hermite_eval(int q, double x);
/// Fills out[q] = H_q(x) for q = 0..out.size()-1.
void hermite_all(double x, std::span<double> out);

/// Quadrature for E[g(Z)], Z ~ N(0,1); weights sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  double expect(const std::function<double(double)>& g) const;
};

/// Gauss-Hermite rule for the standard normal (Golub-Welsch).
QuadratureRule gauss_hermite_rule(int points);

/// Symmetric rule built from the Gauss rule for e^{-x^2/2} on [0, inf),
/// mirrored to the negative axis. It integrates |x|^k p(x) exactly for odd k
/// as well as polynomials, which Gauss-Hermite does not. `half_points` nodes
/// per side.
QuadratureRule folded_gauss_rule(int half_points);

/// f = sum_q c_q H_q truncated at q_max.
class HermiteFunction {
 public:
  HermiteFunction() = default;
  /// coeffs[q] = c_q. Coefficients with |c_q| sqrt(q!) below rank_tol * ||f||
  /// are flushed to zero.
  explicit HermiteFunction(std::vector<double> coeffs, std::string label = {},
                           double rank_tol = 1e-9);

  static HermiteFunction single(int q);

  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int q) const {
    return q >= 0 && q < static_cast<int>(coeffs_.size()) ? coeffs_[q] : 0.0;
  }
  int q_max() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Smallest q >= 1 with c_q != 0, or 0 if every coefficient vanishes.
  int rank() const { return rank_; }
  bool clt_applicable() const { return rank_ >= 2; }
  /// sum_{q<=q_max} q! c_q^2
  double l2_norm_sq() const { return l2_norm_sq_; }
  /// E[f(Z)^2] - l2_norm_sq() when f came from a projection, else 0.
  double chaos_tail() const { return chaos_tail_; }
  /// True when f == H_q for some q (single coefficient equal to one).
  bool is_single_hermite() const;
  const std::string& label() const { return label_; }

  /// Evaluates the truncated series.
  double operator()(double x) const;

 private:
  friend HermiteFunction expand(const std::function<double(double)>&, int, int, std::string);

  std::vector<double> coeffs_;
  std::string label_;
  int rank_ = 0;
  double l2_norm_sq_ = 0.0;
  double chaos_tail_ = 0.0;
};

inline constexpr int kDefaultQMax = 12;

/// Projects f onto H_0..H_{q_max} with c_q = E[f(Z) H_q(Z)] / q!, using the
/// folded rule with quad_points nodes in total (default 4 q_max + 1).
/// Throws DomainError for non-centred f or quad_points < 2 q_max + 1.
HermiteFunction expand(const std::function<double(double)>& f, int q_max = kDefaultQMax,
                       int quad_points = 0, std::string label = {});

enum class BuiltinKind { even_power, odd_abs_power, single_hermite };

/// x^{2p} - E[Z^{2p}], |x|^{2p+1} - E|Z|^{2p+1} or H_q.
/// q_max < 0 picks max(12, 2p) so that polynomial families are not truncated.
HermiteFunction builtin_family(BuiltinKind kind, int p_or_q, int q_max = -1);

/// Closed-form coefficient table as printed with the power families, for
/// comparison against the projection. Entries that are undefined (negative
/// factorial arguments) are NaN.
std::vector<double> printed_coefficients(BuiltinKind kind, int p, int q_max);

/// E[Z^{2p}] = (2p-1)!! and E|Z|^{k} for the built-in families.
double normal_abs_moment(int k);

}  // namespace ssgauss
