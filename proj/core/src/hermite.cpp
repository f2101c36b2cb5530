#include "ssgauss/hermite.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ssgauss/errors.hpp"

namespace ssgauss {

double hermite_eval(int q, double x) {
  if (q < 0) throw DomainError("Hermite index must be >= 0");
  if (q == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < q; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_all(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    out[k + 1] = x * out[k] - static_cast<double>(k) * out[k - 1];
  }
}

double QuadratureRule::expect(const std::function<double(double)>& g) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * g(nodes[i]);
  return s;
}

namespace {

// Golub-Welsch: nodes and normalized weights of the Gauss rule whose Jacobi
// matrix has diagonal a and off-diagonal b.
QuadratureRule golub_welsch(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(a, b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("Golub-Welsch eigensolver failed");
  QuadratureRule rule;
  const Eigen::Index m = a.size();
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    // Christoffel weights keep relative accuracy at the tail nodes
    const double x = rule.nodes[i];
    double prev = 0.0;
    double cur = 1.0;
    double sum = 1.0;
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
      const double next = ((x - a(k)) * cur - (k > 0 ? b(k - 1) * prev : 0.0)) / b(k);
      prev = cur;
      cur = next;
      sum += cur * cur;
    }
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

QuadratureRule gauss_legendre(int points) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(points);
  Eigen::VectorXd b(std::max(points - 1, 0));
  for (int k = 1; k < points; ++k) b(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  QuadratureRule r = golub_welsch(a, b);
  for (double& w : r.weights) w *= 2.0;  // weight 1 on [-1, 1]
  return r;
}

// Recurrence coefficients of the half-normal density on [0, inf) by Lanczos
// with full reorthogonalization over a fine composite Gauss-Legendre
// discretization of [0, 40].
QuadratureRule half_normal_rule(int m) {
  constexpr double kUpper = 40.0;
  constexpr int kPanels = 400;
  const QuadratureRule gl = gauss_legendre(16);
  const double h = kUpper / kPanels;
  std::vector<double> xs;
  std::vector<double> ws;
  xs.reserve(kPanels * gl.nodes.size());
  ws.reserve(xs.capacity());
  const double dens = std::sqrt(2.0 / std::numbers::pi);
  for (int p = 0; p < kPanels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = mid + 0.5 * h * gl.nodes[i];
      const double w = 0.5 * h * gl.weights[i] * dens * std::exp(-0.5 * x * x);
      if (w == 0.0) continue;
      xs.push_back(x);
      ws.push_back(w);
    }
  }
  const Eigen::Index K = static_cast<Eigen::Index>(xs.size());
  if (m > K / 4) throw DomainError("half-range rule: too many nodes requested");
  const Eigen::Map<const Eigen::VectorXd> x(xs.data(), K);
  Eigen::MatrixXd Q(K, m);
  Eigen::VectorXd a(m);
  Eigen::VectorXd b(std::max(m - 1, 0));
  Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(ws.data(), K).cwiseSqrt();
  q /= q.norm();
  for (int k = 0; k < m; ++k) {
    Q.col(k) = q;
    Eigen::VectorXd r = x.cwiseProduct(q);
    a(k) = q.dot(r);
    if (k + 1 == m) break;
    for (int pass = 0; pass < 2; ++pass) {
      r -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).transpose() * r);
    }
    b(k) = r.norm();
    q = r / b(k);
  }
  return golub_welsch(a, b);
}

double factorial(int q) { return std::tgamma(q + 1.0); }

}  // namespace

QuadratureRule gauss_hermite_rule(int points) {
  if (points < 1) throw DomainError("quadrature needs at least one point");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(points);
  Eigen::VectorXd b(std::max(points - 1, 0));
  for (int k = 1; k < points; ++k) b(k - 1) = std::sqrt(static_cast<double>(k));
  return golub_welsch(a, b);
}

QuadratureRule folded_gauss_rule(int half_points) {
  if (half_points < 1) throw DomainError("quadrature needs at least one point");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  QuadratureRule half;
  {
    std::scoped_lock lock(mutex);
    auto it = cache.find(half_points);
    if (it == cache.end()) it = cache.emplace(half_points, half_normal_rule(half_points)).first;
    half = it->second;
  }
  QuadratureRule rule;
  const std::size_t m = half.nodes.size();
  rule.nodes.resize(2 * m);
  rule.weights.resize(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    rule.nodes[m - 1 - i] = -half.nodes[i];
    rule.weights[m - 1 - i] = 0.5 * half.weights[i];
    rule.nodes[m + i] = half.nodes[i];
    rule.weights[m + i] = 0.5 * half.weights[i];
  }
  return rule;
}

HermiteFunction::HermiteFunction(std::vector<double> coeffs, std::string label, double rank_tol)
    : coeffs_(std::move(coeffs)), label_(std::move(label)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  double norm_sq = 0.0;
  for (std::size_t q = 0; q < coeffs_.size(); ++q) {
    if (!std::isfinite(coeffs_[q])) throw DomainError("Hermite coefficients must be finite");
    norm_sq += factorial(static_cast<int>(q)) * coeffs_[q] * coeffs_[q];
  }
  const double norm = std::sqrt(norm_sq);
  l2_norm_sq_ = 0.0;
  for (std::size_t q = 0; q < coeffs_.size(); ++q) {
    const double fq = factorial(static_cast<int>(q));
    if (std::abs(coeffs_[q]) * std::sqrt(fq) < rank_tol * norm) coeffs_[q] = 0.0;
    l2_norm_sq_ += fq * coeffs_[q] * coeffs_[q];
  }
  if (coeffs_[0] != 0.0) {
    throw DomainError("f is not centred (c_0 = " + std::to_string(coeffs_[0]) +
                      "); subtract E[f(Z)] first");
  }
  rank_ = 0;
  for (std::size_t q = 1; q < coeffs_.size(); ++q) {
    if (coeffs_[q] != 0.0) {
      rank_ = static_cast<int>(q);
      break;
    }
  }
}

HermiteFunction HermiteFunction::single(int q) {
  if (q < 1) throw DomainError("single Hermite index must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(q) + 1, 0.0);
  c[q] = 1.0;
  return HermiteFunction(std::move(c), "hermite:" + std::to_string(q));
}

bool HermiteFunction::is_single_hermite() const {
  int nonzero = 0;
  for (double c : coeffs_) {
    if (c != 0.0) {
      if (c != 1.0) return false;
      ++nonzero;
    }
  }
  return nonzero == 1;
}

double HermiteFunction::operator()(double x) const {
  double prev = 1.0;
  double cur = x;
  double s = coeffs_[0];
  if (coeffs_.size() > 1) s += coeffs_[1] * x;
  for (std::size_t k = 1; k + 1 < coeffs_.size(); ++k) {
    const double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
    s += coeffs_[k + 1] * cur;
  }
  return s;
}

HermiteFunction expand(const std::function<double(double)>& f, int q_max, int quad_points,
                       std::string label) {
  if (q_max < 2) throw DomainError("q_max must be >= 2");
  if (quad_points <= 0) quad_points = 4 * q_max + 1;
  if (quad_points < 2 * q_max + 1) {
    throw DomainError("quad_points must be >= 2 q_max + 1");
  }
  const QuadratureRule rule = folded_gauss_rule((quad_points + 1) / 2);
  std::vector<double> c(static_cast<std::size_t>(q_max) + 1, 0.0);
  std::vector<double> h(c.size());
  double second_moment = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double fx = f(rule.nodes[i]);
    if (!std::isfinite(fx)) throw DomainError("f is not finite at a quadrature node");
    hermite_all(rule.nodes[i], h);
    const double wf = rule.weights[i] * fx;
    second_moment += wf * fx;
    for (std::size_t q = 0; q < c.size(); ++q) c[q] += wf * h[q];
  }
  const double norm = std::sqrt(second_moment);
  if (norm == 0.0) throw DomainError("f vanishes almost surely under N(0,1)");
  if (std::abs(c[0]) > 1e-9 * norm) {
    throw DomainError("f is not centred: E[f(Z)] = " + std::to_string(c[0]) +
                      "; subtract the mean before expanding");
  }
  c[0] = 0.0;
  for (std::size_t q = 1; q < c.size(); ++q) c[q] /= factorial(static_cast<int>(q));
  HermiteFunction out(std::move(c), std::move(label));
  out.chaos_tail_ = std::max(0.0, second_moment - out.l2_norm_sq_);
  return out;
}

double normal_abs_moment(int k) {
  if (k < 0) throw DomainError("moment order must be >= 0");
  return std::pow(2.0, 0.5 * k) * std::tgamma(0.5 * (k + 1)) / std::sqrt(std::numbers::pi);
}

HermiteFunction builtin_family(BuiltinKind kind, int p_or_q, int q_max) {
  switch (kind) {
    case BuiltinKind::single_hermite:
      return HermiteFunction::single(p_or_q);
    case BuiltinKind::even_power: {
      const int p = p_or_q;
      if (p < 1) throw DomainError("even_power needs p >= 1");
      if (q_max < 0) q_max = std::max(kDefaultQMax, 2 * p);
      const double mean = normal_abs_moment(2 * p);
      return expand([p, mean](double x) { return std::pow(x, 2 * p) - mean; }, q_max, 0,
                    "even_power:" + std::to_string(p));
    }
    case BuiltinKind::odd_abs_power: {
      const int p = p_or_q;
      if (p < 1) throw DomainError("odd_abs_power needs p >= 1");
      if (q_max < 0) q_max = std::max(kDefaultQMax, 2 * p);
      const double mean = normal_abs_moment(2 * p + 1);
      return expand([p, mean](double x) { return std::pow(std::abs(x), 2 * p + 1) - mean; },
                    q_max, 0, "odd_abs_power:" + std::to_string(p));
    }
  }
  throw DomainError("unknown function family");
}

std::vector<double> printed_coefficients(BuiltinKind kind, int p, int q_max) {
  std::vector<double> c(static_cast<std::size_t>(std::max(q_max, 0)) + 1, 0.0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto double_factorial = [](int k) {
    double r = 1.0;
    for (int i = k; i > 1; i -= 2) r *= i;
    return r;
  };
  for (int q = 2; q <= q_max; q += 2) {
    if (q > 2 * p) break;
    if (kind == BuiltinKind::even_power) {
      const int k = 2 * p - q - 1;
      c[q] = k < 0 ? nan : factorial(2 * p) * double_factorial(k) / (factorial(q) * factorial(k));
    } else if (kind == BuiltinKind::odd_abs_power) {
      const int k = 2 * p - q;
      c[q] = factorial(2 * p + 1) * double_factorial(k) / (factorial(q) * factorial(k)) *
             std::sqrt(2.0 / std::numbers::pi);
    }
  }
  return c;
}

}  // namespace ssgauss
