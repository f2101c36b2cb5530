#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ssgauss {

using ParameterMap = std::map<std::string, double, std::less<>>;

namespace family {

// Fractional Brownian motion, the stationary-increment reference case.
struct Fbm {
  double H;
};

// Bifractional Brownian motion, covariance 2^{-K}[(s^{2H}+t^{2H})^K - |t-s|^{2HK}].
struct Bifbm {
  double H;
  double K;
};

// Sub-fractional Brownian motion, covariance s^{2H}+t^{2H}-((s+t)^{2H}+|s-t|^{2H})/2.
struct Subfbm {
  double H;
};

// Arcsine process with covariance sqrt(st) asin(min(s,t)/sqrt(st)).
struct Swanson {};

// Durieu-Wang components: Gamma(1-a)((s+t)^a - max(s,t)^a) ...
struct DurieuWangZ1 {
  double a;
  double gamma;  // Gamma(1 - a)
};

// ... and Gamma(1-a)(s^a + t^a - (s+t)^a).
struct DurieuWangZ2 {
  double a;
  double gamma;
};

}  // namespace family

using ModelFamily = std::variant<family::Fbm, family::Bifbm, family::Subfbm,
                                 family::Swanson, family::DurieuWangZ1,
                                 family::DurieuWangZ2>;

/// A self-similar Gaussian covariance model in the phi-representation
/// R(s,t) = s^{2 beta} phi(t/s), 0 < s <= t, with the leading-term split
/// phi(x) = -lambda (x-1)^alpha + psi(x).
///
/// The exponents (alpha, beta, lambda, nu) are stored explicitly when the model
/// is built and cross-checked against the closed forms; instances are
/// immutable and safe to share between threads.
class ModelSpec {
 public:
  static ModelSpec fbm(double H);
  static ModelSpec bifbm(double H, double K);
  static ModelSpec subfbm(double H);
  static ModelSpec swanson();
  static ModelSpec durieu_wang_z1(double a);
  static ModelSpec durieu_wang_z2(double a);

  /// Builds a model from its catalog id ("fbm", "bifbm", "subfbm", "swanson",
  /// "dw-z1", "dw-z2") and named parameters. Missing parameters take the
  /// catalog defaults; unknown names are rejected.
  static ModelSpec from_id(std::string_view id, const ParameterMap& params = {});

  const std::string& id() const { return id_; }
  const ParameterMap& params() const { return params_; }
  /// e.g. "bifbm(H=0.6,K=0.5)"
  std::string label() const;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }
  /// decay exponent of phi' away from the diagonal; set only when alpha < 1.
  std::optional<double> nu() const { return nu_; }

  /// phi(x), phi'(x) or phi''(x) for x >= 1 from closed forms.
  double phi(double x, int order = 0) const;
  /// psi(x) = phi(x) + lambda (x-1)^alpha and its first two derivatives.
  double psi(double x, int order = 0) const;
  /// R(s,t) = min^{2 beta} phi(max/min); zero when either time is zero.
  double covariance(double s, double t) const;

  const ModelFamily& family() const { return family_; }

 private:
  ModelSpec(std::string id, ParameterMap params, ModelFamily fam, double alpha,
            double beta, double lambda, std::optional<double> nu);
  void cross_check() const;

  std::string id_;
  ParameterMap params_;
  ModelFamily family_;
  double alpha_;
  double beta_;
  double lambda_;
  std::optional<double> nu_;
};

struct ParameterRange {
  std::string name;
  double lower;
  double upper;
  bool upper_inclusive;
  double default_value;
};

/// Catalog entry: how to build a model and the documented exponents as
/// expressions in its parameters.
struct ModelTemplate {
  std::string id;
  std::string description;
  std::vector<ParameterRange> parameters;
  std::string alpha;
  std::string beta;
  std::string lambda;
  std::string nu;

  ModelSpec instantiate(const ParameterMap& params = {}) const;
};

std::span<const ModelTemplate> list_models();
/// Throws DomainError for an unknown id.
const ModelTemplate& find_model(std::string_view id);

}  // namespace ssgauss
