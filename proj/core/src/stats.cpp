#include "ssgauss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ssgauss/detail/numeric.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/rng.hpp"

namespace ssgauss {

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  using std::numbers::pi;
  if (lambda < 1.18) {
    // 1 - sqrt(2 pi)/lambda sum_k exp(-(2k-1)^2 pi^2 / (8 lambda^2))
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double term = std::exp(-(2 * k - 1) * (2 * k - 1) * pi * pi / (8.0 * lambda * lambda));
      s += term;
      if (term < 1e-18 * s) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test_normal(std::span<const double> x) {
  if (x.empty()) throw DomainError("KS test needs at least one sample");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const double M = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double F = normal_cdf(v[i]);
    d = std::max({d, (i + 1) / M - F, F - i / M});
  }
  return {d, kolmogorov_sf(std::sqrt(M) * d)};
}

RawMoments raw_moments(std::span<const double> x) {
  if (x.size() < 2) throw DomainError("moments need at least two samples");
  detail::CompensatedSum s1, s2, s4;
  for (double v : x) {
    const double v2 = v * v;
    s1.add(v);
    s2.add(v2);
    s4.add(v2 * v2);
  }
  const double M = static_cast<double>(x.size());
  RawMoments r;
  r.mean = s1.value() / M;
  r.m2 = s2.value() / M;
  r.m4 = s4.value() / M;
  r.mean_se = std::sqrt(std::max(0.0, r.m2 - r.mean * r.mean) / M);
  r.m2_se = std::sqrt(std::max(0.0, r.m4 - r.m2 * r.m2) / M);
  return r;
}

double kurtosis_ratio(std::span<const double> x) {
  const RawMoments r = raw_moments(x);
  return r.m4 / (3.0 * r.m2 * r.m2);
}

double bootstrap_kurtosis_se(std::span<const double> x, int resamples, std::uint64_t seed,
                             std::uint64_t stream) {
  if (resamples < 2) throw DomainError("bootstrap needs at least two resamples");
  const std::size_t M = x.size();
  std::vector<double> ratios(static_cast<std::size_t>(resamples));
  std::vector<double> buf(M);
  for (int b = 0; b < resamples; ++b) {
    const NormalStream rng(seed, stream, static_cast<std::uint32_t>(b + 1));
    for (std::size_t i = 0; i < M; ++i) {
      const auto idx = static_cast<std::size_t>(rng.uniform(i) * static_cast<double>(M));
      buf[i] = x[std::min(idx, M - 1)];
    }
    ratios[b] = kurtosis_ratio(buf);
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= resamples;
  double ss = 0.0;
  for (double r : ratios) ss += (r - mean) * (r - mean);
  return std::sqrt(ss / (resamples - 1));
}

CrossMoment cross_moment(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw DomainError("cross_moment: size mismatch");
  const double M = static_cast<double>(a.size());
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  const double mean = s.value() / M;
  detail::CompensatedSum ss;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] * b[i] - mean;
    ss.add(d * d);
  }
  return {mean, std::sqrt(ss.value() / (M - 1.0) / M)};
}

}  // namespace ssgauss
