#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ssgauss/covgrid.hpp"
#include "ssgauss/models.hpp"

namespace ssgauss {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct CholeskyFactor {
  Eigen::MatrixXd L;  // lower triangular, L L^T = cov + jitter I
  double jitter = 0.0;
};

/// LLT with the escalation ladder {0, 1e-12, ..., 1e-8} * trace/N added to
/// the diagonal. Throws NumericalError if every rung fails.
CholeskyFactor cholesky(const Eigen::MatrixXd& cov);
CholeskyFactor cholesky(const IncrementCovariance& ic);

/// out = L z, z the first N normals of stream (seed, replica).
void draw(const CholeskyFactor& factor, std::uint64_t seed, std::uint64_t replica,
          std::span<double> out);
std::vector<double> draw(const CholeskyFactor& factor, std::uint64_t seed, std::uint64_t replica);

struct SampleBatch {
  std::uint64_t seed = 0;
  std::uint64_t first_replica = 0;
  int n = 0;
  int N = 0;
  double jitter = 0.0;
  RowMatrix increments;  // M x N
  RowMatrix normalized;  // increments scaled by 1/xi_j
};

/// Rows first_replica .. first_replica+M-1; identical for every thread count.
SampleBatch sample_batch(const IncrementCovariance& ic, const CholeskyFactor& factor, int M,
                         std::uint64_t seed, unsigned threads = 1,
                         std::uint64_t first_replica = 0);
SampleBatch sample_batch(const ModelSpec& model, int n, int N, int M, std::uint64_t seed,
                         unsigned threads = 1);

/// Little-endian dump: uint64 header {n, N, M, seed} then the M x N
/// increments as row-major float64.
void write_binary(std::ostream& os, const SampleBatch& batch);
SampleBatch read_binary(std::istream& is);

}  // namespace ssgauss
