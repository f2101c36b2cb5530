#include "ssgauss/covgrid.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "ssgauss/detail/parallel.hpp"
#include "ssgauss/errors.hpp"

namespace ssgauss {

Eigen::MatrixXd PackedSymmetric::dense(int m) const {
  if (m < 0 || m > size_) m = size_;
  Eigen::MatrixXd out(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = (*this)(i, j);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

namespace {

constexpr double kFlush = 1e-300;

// Kernel on the integer grid: R(p, q) for 0 <= q <= p. The factor n^{-2 beta}
// is applied once to the assembled increments.
void kernel_row(const ModelSpec& model, int p, std::vector<double>& row) {
  row.assign(static_cast<std::size_t>(p) + 1, 0.0);
  if (p == 0) return;
  const double two_beta = 2.0 * model.beta();
  const double dp = static_cast<double>(p);
  for (int q = 1; q <= p; ++q) {
    const double dq = static_cast<double>(q);
    row[q] = std::pow(dq, two_beta) * model.phi(dp / dq);
  }
}

}  // namespace

IncrementCovariance increment_cov(const ModelSpec& model, int n, int N, unsigned threads,
                                  int max_increments) {
  if (n < 2) throw DomainError("grid resolution n must be >= 2");
  if (N < 1) throw DomainError("number of increments N must be >= 1");
  if (N > max_increments) {
    throw DomainError("N = " + std::to_string(N) + " exceeds the dense-matrix cap " +
                      std::to_string(max_increments));
  }

  IncrementCovariance ic;
  ic.n = n;
  ic.N = N;
  ic.cov = PackedSymmetric(N);
  const double scale = std::pow(static_cast<double>(n), -2.0 * model.beta());

  detail::parallel_for_chunks(static_cast<std::size_t>(N), threads, [&](std::size_t b, std::size_t e) {
    std::vector<double> lo;  // R(j, .)
    std::vector<double> hi;  // R(j+1, .)
    kernel_row(model, static_cast<int>(b), lo);
    for (std::size_t jj = b; jj < e; ++jj) {
      const int j = static_cast<int>(jj);
      kernel_row(model, j + 1, hi);
      for (int k = 0; k <= j; ++k) {
        // (R(j+1,k+1) - R(j,k+1)) - (R(j+1,k) - R(j,k)); for k == j the
        // second point is R(j, j+1) = R(j+1, j).
        const double r_ad = (k < j) ? lo[k + 1] : hi[j];
        double v = ((hi[k + 1] - r_ad) - (hi[k] - lo[k])) * scale;
        if (std::abs(v) < kFlush) v = 0.0;
        ic.cov(j, k) = v;
      }
      lo.swap(hi);
    }
  });

  ic.xi.resize(N);
  for (int j = 0; j < N; ++j) {
    const double d = ic.cov(j, j);
    if (!(d > 0.0)) {
      throw NumericalError("increment variance at j = " + std::to_string(j) +
                           " is not positive (" + std::to_string(d) + ")");
    }
    ic.xi[j] = std::sqrt(d);
  }
  return ic;
}

Eigen::MatrixXd normalized_corr(const IncrementCovariance& ic, int m) {
  if (m < 0 || m > ic.N) m = ic.N;
  Eigen::MatrixXd rho(m, m);
  for (int j = 0; j < m; ++j) {
    rho(j, j) = 1.0;
    for (int k = 0; k < j; ++k) {
      const double v = ic.corr(j, k);
      rho(j, k) = v;
      rho(k, j) = v;
    }
  }
  return rho;
}

void write_csv(std::ostream& os, const IncrementCovariance& ic, bool correlation) {
  os << "j,k,value\n";
  const auto old = os.precision(17);
  for (int j = 0; j < ic.N; ++j) {
    for (int k = 0; k < ic.N; ++k) {
      os << j << ',' << k << ',' << (correlation ? ic.corr(j, k) : ic.cov(j, k)) << '\n';
    }
  }
  os.precision(old);
}

}  // namespace ssgauss
