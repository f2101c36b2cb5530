#include "ssgauss/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ssgauss/detail/numeric.hpp"
#include "ssgauss/errors.hpp"

namespace ssgauss {

namespace {

using detail::pow_diff;
using detail::second_diff_pow;

constexpr double kInf = std::numeric_limits<double>::infinity();

// c * y^p with the conventions 0 * anything = 0 and 0^p = 0, 1, inf for
// p > 0, p = 0, p < 0.
double scaled_pow(double c, double y, double p) {
  if (c == 0.0) return 0.0;
  if (y == 0.0) {
    if (p > 0.0) return 0.0;
    if (p == 0.0) return c;
    return c * kInf;
  }
  return c * std::pow(y, p);
}

double scaled(double c, double v) { return c == 0.0 ? 0.0 : c * v; }

// ---------------------------------------------------------------------------
// Closed forms. Every function takes x >= 1 and order in {0,1,2}; non-finite
// results at x = 1 are turned into SingularityError by the caller.

double phi_of(const family::Fbm& m, double x, int order) {
  const double h2 = 2.0 * m.H;
  switch (order) {
    case 0: return 0.5 * (1.0 + pow_diff(x, x - 1.0, h2));
    case 1: return scaled(m.H, pow_diff(x, x - 1.0, h2 - 1.0));
    default: return scaled(m.H * (h2 - 1.0), pow_diff(x, x - 1.0, h2 - 2.0));
  }
}

double psi_of(const family::Fbm& m, double x, int order) {
  const double h2 = 2.0 * m.H;
  switch (order) {
    case 0: return 0.5 * (1.0 + std::pow(x, h2));
    case 1: return m.H * std::pow(x, h2 - 1.0);
    default: return scaled_pow(m.H * (h2 - 1.0), x, h2 - 2.0);
  }
}

// Bifractional forms are written around u = x^{-2H}: (1+x^{2H})^{K-1} =
// x^{2H(K-1)} (1+u)^{K-1}, which keeps the large-x differences stable.
struct BifbmTerms {
  double u, e_k, e_k1, e_k2;
  BifbmTerms(const family::Bifbm& m, double x) {
    u = std::pow(x, -2.0 * m.H);
    const double l = std::log1p(u);
    e_k = std::expm1(m.K * l);
    e_k1 = std::expm1((m.K - 1.0) * l);
    e_k2 = std::expm1((m.K - 2.0) * l);
  }
};

double phi_of(const family::Bifbm& m, double x, int order) {
  const double hk2 = 2.0 * m.H * m.K;
  const double c = std::pow(2.0, 1.0 - m.K) * m.H * m.K;
  const BifbmTerms t(m, x);
  switch (order) {
    case 0:
      return std::pow(2.0, -m.K) * (std::pow(x, hk2) * t.e_k + pow_diff(x, x - 1.0, hk2));
    case 1:
      return c * (std::pow(x, hk2 - 1.0) * t.e_k1 + pow_diff(x, x - 1.0, hk2 - 1.0));
    default:
      return c * (scaled(hk2 - 1.0, pow_diff(x, x - 1.0, hk2 - 2.0)) +
                  std::pow(x, hk2 - 2.0) *
                      ((2.0 * m.H - 1.0) * t.e_k1 + 2.0 * m.H * (m.K - 1.0) * t.e_k2));
  }
}

double psi_of(const family::Bifbm& m, double x, int order) {
  const double hk2 = 2.0 * m.H * m.K;
  const double c = std::pow(2.0, 1.0 - m.K) * m.H * m.K;
  const double u = std::pow(x, -2.0 * m.H);
  switch (order) {
    case 0: return std::pow(2.0, -m.K) * std::pow(1.0 + std::pow(x, 2.0 * m.H), m.K);
    case 1: return c * std::pow(x, hk2 - 1.0) * std::pow(1.0 + u, m.K - 1.0);
    default:
      return c * std::pow(x, hk2 - 2.0) *
             ((2.0 * m.H - 1.0) * std::pow(1.0 + u, m.K - 1.0) +
              2.0 * m.H * (m.K - 1.0) * std::pow(1.0 + u, m.K - 2.0));
  }
}

double phi_of(const family::Subfbm& m, double x, int order) {
  const double h2 = 2.0 * m.H;
  switch (order) {
    case 0: return 1.0 - 0.5 * second_diff_pow(x, h2);
    case 1: return -m.H * second_diff_pow(x, h2 - 1.0);
    default: return scaled(-m.H * (h2 - 1.0), second_diff_pow(x, h2 - 2.0));
  }
}

double psi_of(const family::Subfbm& m, double x, int order) {
  const double h2 = 2.0 * m.H;
  switch (order) {
    case 0: return 1.0 + std::pow(x, h2) - 0.5 * std::pow(x + 1.0, h2);
    case 1: return 2.0 * m.H * std::pow(x, h2 - 1.0) - m.H * std::pow(x + 1.0, h2 - 1.0);
    default:
      return scaled(m.H * (h2 - 1.0),
                    2.0 * std::pow(x, h2 - 2.0) - std::pow(x + 1.0, h2 - 2.0));
  }
}

double phi_of(const family::Swanson&, double x, int order) {
  const double rx = std::sqrt(x);
  const double a = std::asin(1.0 / rx);
  if (order == 0) return rx * a;
  const double h = x - 1.0;
  if (h == 0.0) return kInf;
  const double rh = std::sqrt(h);
  if (order == 1) return 0.5 / rx * (a - 1.0 / rh);
  return -0.25 / (x * rx) * (a - 1.0 / rh) - 0.25 / (rx * rh) * (1.0 / x - 1.0 / h);
}

// Below this distance from the diagonal psi and its derivatives use the
// expansion in h = x - 1:
//   psi = (pi/2) sqrt(1+h) - h^{3/2}/6 + (11/120) h^{5/2} + O(h^{7/2}).
constexpr double kSwansonSeriesCutoff = 1e-8;

double psi_of(const family::Swanson&, double x, int order) {
  using std::numbers::pi;
  const double h = x - 1.0;
  if (h < kSwansonSeriesCutoff) {
    const double rh = std::sqrt(h);
    switch (order) {
      case 0: return 0.5 * pi * std::sqrt(1.0 + h) - h * rh / 6.0 + 11.0 / 120.0 * h * h * rh;
      case 1: return 0.25 * pi / std::sqrt(1.0 + h) - 0.25 * rh + 11.0 / 48.0 * h * rh;
      default:
        if (h == 0.0) return -kInf;
        return -0.125 * pi / ((1.0 + h) * std::sqrt(1.0 + h)) - 0.125 / rh + 11.0 / 32.0 * rh;
    }
  }
  const double rx = std::sqrt(x);
  const double rh = std::sqrt(h);
  const double a = std::asin(1.0 / rx);
  const double b = rh / (rx + 1.0);  // (sqrt(x) - 1)/sqrt(x - 1)
  switch (order) {
    case 0: return rx * a + rh;
    case 1: return 0.5 / rx * (a + b);
    default: return -0.25 / (x * rx) * (a + b + 1.0 / (rh * (rx + 1.0)));
  }
}

double phi_of(const family::DurieuWangZ1& m, double x, int order) {
  const double a = m.a;
  switch (order) {
    case 0: return m.gamma * pow_diff(x + 1.0, x, a);
    case 1: return m.gamma * a * pow_diff(x + 1.0, x, a - 1.0);
    default: return m.gamma * a * (a - 1.0) * pow_diff(x + 1.0, x, a - 2.0);
  }
}

double psi_of(const family::DurieuWangZ1& m, double x, int order) {
  const double a = m.a;
  switch (order) {
    case 0: return m.gamma * (std::pow(x, a) + second_diff_pow(x, a));
    case 1: return m.gamma * a * (std::pow(x, a - 1.0) + second_diff_pow(x, a - 1.0));
    default:
      return m.gamma * a * (a - 1.0) * (std::pow(x, a - 2.0) + second_diff_pow(x, a - 2.0));
  }
}

double phi_of(const family::DurieuWangZ2& m, double x, int order) {
  const double a = m.a;
  switch (order) {
    case 0: return m.gamma * (1.0 - pow_diff(x + 1.0, x, a));
    case 1: return -m.gamma * a * pow_diff(x + 1.0, x, a - 1.0);
    default: return -m.gamma * a * (a - 1.0) * pow_diff(x + 1.0, x, a - 2.0);
  }
}

double psi_of(const family::DurieuWangZ2& m, double x, int order) {
  const double a = m.a;
  const double below = [&](double p) { return scaled_pow(1.0, x - 1.0, p); }(a - static_cast<double>(order));
  switch (order) {
    case 0: return m.gamma * (1.0 + std::pow(x, a) + below - std::pow(x + 1.0, a));
    case 1:
      return m.gamma * a * (std::pow(x, a - 1.0) + below - std::pow(x + 1.0, a - 1.0));
    default:
      return m.gamma * a * (a - 1.0) *
             (std::pow(x, a - 2.0) + below - std::pow(x + 1.0, a - 2.0));
  }
}

void require_open_unit(const char* name, double v) {
  if (!(v > 0.0 && v < 1.0)) {
    throw DomainError(std::string("parameter ") + name + " must lie in (0,1), got " +
                      std::to_string(v));
  }
}

void check_args(double x, int order) {
  if (!(x >= 1.0)) throw DomainError("phi/psi are defined for x >= 1, got x = " + std::to_string(x));
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0, 1 or 2");
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

ModelSpec::ModelSpec(std::string id, ParameterMap params, ModelFamily fam, double alpha,
                     double beta, double lambda, std::optional<double> nu)
    : id_(std::move(id)),
      params_(std::move(params)),
      family_(fam),
      alpha_(alpha),
      beta_(beta),
      lambda_(lambda),
      nu_(nu) {
  if (!(beta_ > 0.0 && beta_ < 1.0)) throw DomainError("beta must lie in (0,1)");
  if (!(alpha_ > 0.0 && alpha_ <= 2.0 * beta_ * (1.0 + 1e-15))) {
    throw DomainError("alpha must lie in (0, 2 beta]");
  }
  if (!(lambda_ > 0.0)) throw DomainError("lambda must be positive");
  if (nu_ && !(*nu_ > 1.0 && *nu_ <= 2.0)) throw DomainError("nu must lie in (1,2]");
  cross_check();
}

void ModelSpec::cross_check() const {
  if (!(phi(1.0) > 0.0)) throw NumericalError(label() + ": phi(1) = E[X_1^2] must be positive");
  for (double x : {1.0, 1.0 + 1e-6, 1.5, 2.0, 7.0, 120.0}) {
    const double p = phi(x);
    const double residual = p + lambda_ * std::pow(x - 1.0, alpha_) - psi(x);
    if (!(std::abs(residual) <= 1e-10 * (1.0 + std::abs(p)))) {
      throw NumericalError(label() + ": phi/psi decomposition check failed at x = " +
                           format_value(x));
    }
  }
}

ModelSpec ModelSpec::fbm(double H) {
  require_open_unit("H", H);
  std::optional<double> nu;
  if (2.0 * H < 1.0) nu = 2.0 - 2.0 * H;
  return ModelSpec("fbm", {{"H", H}}, family::Fbm{H}, 2.0 * H, H, 0.5, nu);
}

ModelSpec ModelSpec::bifbm(double H, double K) {
  require_open_unit("H", H);
  if (!(K > 0.0 && K <= 1.0)) throw DomainError("parameter K must lie in (0,1]");
  const double beta = H * K;
  std::optional<double> nu;
  if (2.0 * beta < 1.0) nu = std::min(1.0 + 2.0 * H - 2.0 * beta, 2.0 - 2.0 * beta);
  return ModelSpec("bifbm", {{"H", H}, {"K", K}}, family::Bifbm{H, K}, 2.0 * beta, beta,
                   std::pow(2.0, -K), nu);
}

ModelSpec ModelSpec::subfbm(double H) {
  require_open_unit("H", H);
  std::optional<double> nu;
  if (2.0 * H < 1.0) nu = 2.0 - 2.0 * H;
  return ModelSpec("subfbm", {{"H", H}}, family::Subfbm{H}, 2.0 * H, H, 0.5, nu);
}

ModelSpec ModelSpec::swanson() {
  return ModelSpec("swanson", {}, family::Swanson{}, 0.5, 0.5, 1.0, 2.0);
}

ModelSpec ModelSpec::durieu_wang_z1(double a) {
  require_open_unit("alpha", a);
  const double g = std::tgamma(1.0 - a);
  return ModelSpec("dw-z1", {{"alpha", a}}, family::DurieuWangZ1{a, g}, a, 0.5 * a, g, 2.0 - a);
}

ModelSpec ModelSpec::durieu_wang_z2(double a) {
  require_open_unit("alpha", a);
  const double g = std::tgamma(1.0 - a);
  return ModelSpec("dw-z2", {{"alpha", a}}, family::DurieuWangZ2{a, g}, a, 0.5 * a, g, 2.0 - a);
}

ModelSpec ModelSpec::from_id(std::string_view id, const ParameterMap& params) {
  const ModelTemplate& tmpl = find_model(id);
  ParameterMap resolved;
  for (const auto& range : tmpl.parameters) resolved[range.name] = range.default_value;
  for (const auto& [name, value] : params) {
    auto it = resolved.find(name);
    if (it == resolved.end()) {
      throw DomainError("model '" + std::string(id) + "' has no parameter '" + name + "'");
    }
    it->second = value;
  }
  auto get = [&](const char* name) { return resolved.at(name); };
  if (id == "fbm") return fbm(get("H"));
  if (id == "bifbm") return bifbm(get("H"), get("K"));
  if (id == "subfbm") return subfbm(get("H"));
  if (id == "swanson") return swanson();
  if (id == "dw-z1") return durieu_wang_z1(get("alpha"));
  return durieu_wang_z2(get("alpha"));
}

std::string ModelSpec::label() const {
  std::string out = id_;
  if (params_.empty()) return out;
  out += '(';
  bool first = true;
  for (const auto& [name, value] : params_) {
    if (!first) out += ',';
    first = false;
    out += name + "=" + format_value(value);
  }
  out += ')';
  return out;
}

double ModelSpec::phi(double x, int order) const {
  check_args(x, order);
  if (x == 1.0 && order >= 1 && alpha_ < 1.0) {
    throw SingularityError(label() + ": phi derivative diverges at x = 1 (alpha < 1)");
  }
  const double v = std::visit([&](const auto& m) { return phi_of(m, x, order); }, family_);
  if (!std::isfinite(v)) {
    throw SingularityError(label() + ": phi derivative of order " + std::to_string(order) +
                           " is singular at x = " + format_value(x));
  }
  return v;
}

double ModelSpec::psi(double x, int order) const {
  check_args(x, order);
  const double v = std::visit([&](const auto& m) { return psi_of(m, x, order); }, family_);
  if (!std::isfinite(v)) {
    throw SingularityError(label() + ": psi derivative of order " + std::to_string(order) +
                           " is singular at x = " + format_value(x));
  }
  return v;
}

double ModelSpec::covariance(double s, double t) const {
  if (!(s >= 0.0 && t >= 0.0)) throw DomainError("covariance requires s, t >= 0");
  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  if (lo == 0.0) return 0.0;
  return std::pow(lo, 2.0 * beta_) * phi(hi / lo);
}

ModelSpec ModelTemplate::instantiate(const ParameterMap& params) const {
  return ModelSpec::from_id(id, params);
}

std::span<const ModelTemplate> list_models() {
  static const std::vector<ModelTemplate> catalog = {
      {"fbm", "fractional Brownian motion",
       {{"H", 0.0, 1.0, false, 0.5}}, "2H", "H", "1/2", "2-2H (alpha<1)"},
      {"bifbm", "bifractional Brownian motion",
       {{"H", 0.0, 1.0, false, 0.6}, {"K", 0.0, 1.0, true, 0.5}}, "2HK", "HK", "2^-K",
       "min(1+2H-2HK, 2-2HK) (alpha<1)"},
      {"subfbm", "sub-fractional Brownian motion",
       {{"H", 0.0, 1.0, false, 0.35}}, "2H", "H", "1/2", "2-2H (alpha<1)"},
      {"swanson", "arcsine process of Swanson", {}, "0.5", "0.5", "1", "2"},
      {"dw-z1", "Durieu-Wang component Z1",
       {{"alpha", 0.0, 1.0, false, 0.5}}, "alpha", "alpha/2", "Gamma(1-alpha)", "2-alpha"},
      {"dw-z2", "Durieu-Wang component Z2",
       {{"alpha", 0.0, 1.0, false, 0.5}}, "alpha", "alpha/2", "Gamma(1-alpha)", "2-alpha"},
  };
  return catalog;
}

const ModelTemplate& find_model(std::string_view id) {
  for (const auto& tmpl : list_models()) {
    if (tmpl.id == id) return tmpl;
  }
  throw DomainError("unknown model '" + std::string(id) +
                    "' (expected fbm, bifbm, subfbm, swanson, dw-z1, dw-z2)");
}

}  // namespace ssgauss
