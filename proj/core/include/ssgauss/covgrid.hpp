#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "ssgauss/models.hpp"

namespace ssgauss {

inline constexpr int kDefaultMaxIncrements = 8192;

// Symmetric matrix stored as its packed lower triangle (row-major).
class PackedSymmetric {
 public:
  PackedSymmetric() = default;
  explicit PackedSymmetric(int size)
      : size_(size), data_(static_cast<std::size_t>(size) * (size + 1) / 2, 0.0) {}

  int size() const { return size_; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  double& operator()(int i, int j) { return data_[index(i, j)]; }
  const std::vector<double>& packed() const { return data_; }

  /// Leading m x m block as a dense matrix (m <= size, m < 0 means all).
  Eigen::MatrixXd dense(int m = -1) const;

 private:
  std::size_t index(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + static_cast<std::size_t>(j);
  }

  int size_ = 0;
  std::vector<double> data_;
};

/// Covariances of the increments dX_j = X_{(j+1)/n} - X_{j/n}, j = 0..N-1.
struct IncrementCovariance {
  int n = 0;
  int N = 0;
  PackedSymmetric cov;
  std::vector<double> xi;  // ||dX_j||, the L2 norms

  double corr(int j, int k) const { return j == k ? 1.0 : cov(j, k) / (xi[j] * xi[k]); }
};

/// Assembles cov_{jk} from the kernel by the rectangle identity. Rows are
/// computed in parallel on `threads` workers; the result does not depend on
/// the thread count.
IncrementCovariance increment_cov(const ModelSpec& model, int n, int N, unsigned threads = 1,
                                  int max_increments = kDefaultMaxIncrements);

/// Correlation matrix rho restricted to indices < m (m < 0: all N).
Eigen::MatrixXd normalized_corr(const IncrementCovariance& ic, int m = -1);

/// CSV with header "j,k,value", full matrix, row-major.
void write_csv(std::ostream& os, const IncrementCovariance& ic, bool correlation);

}  // namespace ssgauss
