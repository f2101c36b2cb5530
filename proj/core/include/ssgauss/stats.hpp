#pragma once

#include <cstdint>
#include <span>

namespace ssgauss {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_sf(double lambda);

/// One-sample Kolmogorov-Smirnov test of x against N(0,1), p-value from the
/// asymptotic distribution at lambda = sqrt(M) D.
KsResult ks_test_normal(std::span<const double> x);

/// Raw moments about zero, E[X^2] and E[X^4], with the delta-method standard
/// error of the second moment.
struct RawMoments {
  double mean = 0.0;
  double mean_se = 0.0;
  double m2 = 0.0;
  double m2_se = 0.0;
  double m4 = 0.0;
};
RawMoments raw_moments(std::span<const double> x);

/// m4 / (3 m2^2)
double kurtosis_ratio(std::span<const double> x);

/// Bootstrap standard error of kurtosis_ratio with `resamples` Philox-indexed
/// resamples keyed by seed.
double bootstrap_kurtosis_se(std::span<const double> x, int resamples, std::uint64_t seed,
                             std::uint64_t stream);

/// Mean of a[i] b[i] and its standard error sd(a b)/sqrt(M).
struct CrossMoment {
  double value = 0.0;
  double se = 0.0;
};
CrossMoment cross_moment(std::span<const double> a, std::span<const double> b);

}  // namespace ssgauss
