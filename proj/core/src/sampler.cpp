#include "ssgauss/sampler.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "ssgauss/detail/parallel.hpp"
#include "ssgauss/errors.hpp"
#include "ssgauss/rng.hpp"

namespace ssgauss {

CholeskyFactor cholesky(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) {
    throw DomainError("cholesky needs a non-empty square matrix");
  }
  const double scale = cov.trace() / static_cast<double>(cov.rows());
  static constexpr double kLadder[] = {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8};
  for (double rung : kLadder) {
    Eigen::MatrixXd a = cov;
    const double eps = rung * scale;
    a.diagonal().array() += eps;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      CholeskyFactor f;
      f.L = llt.matrixL();
      f.jitter = eps;
      return f;
    }
  }
  throw NumericalError("Cholesky factorization failed even with jitter 1e-8 * trace/N");
}

CholeskyFactor cholesky(const IncrementCovariance& ic) { return cholesky(ic.cov.dense()); }

void draw(const CholeskyFactor& factor, std::uint64_t seed, std::uint64_t replica,
          std::span<double> out) {
  const Eigen::Index N = factor.L.rows();
  if (static_cast<Eigen::Index>(out.size()) != N) throw DomainError("draw: output size mismatch");
  const NormalStream stream(seed, replica);
  Eigen::VectorXd z(N);
  for (Eigen::Index i = 0; i < N; ++i) z(i) = stream.normal(static_cast<std::uint64_t>(i));
  Eigen::Map<Eigen::VectorXd>(out.data(), N) = factor.L.triangularView<Eigen::Lower>() * z;
}

std::vector<double> draw(const CholeskyFactor& factor, std::uint64_t seed, std::uint64_t replica) {
  std::vector<double> row(static_cast<std::size_t>(factor.L.rows()));
  draw(factor, seed, replica, row);
  return row;
}

SampleBatch sample_batch(const IncrementCovariance& ic, const CholeskyFactor& factor, int M,
                         std::uint64_t seed, unsigned threads, std::uint64_t first_replica) {
  if (M < 1) throw DomainError("M must be >= 1");
  if (factor.L.rows() != ic.N) throw DomainError("factor does not match the covariance grid");
  SampleBatch b;
  b.seed = seed;
  b.first_replica = first_replica;
  b.n = ic.n;
  b.N = ic.N;
  b.jitter = factor.jitter;
  b.increments.resize(M, ic.N);
  b.normalized.resize(M, ic.N);
  detail::parallel_for_chunks(static_cast<std::size_t>(M), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      draw(factor, seed, first_replica + i, std::span<double>(b.increments.row(r).data(), ic.N));
      for (int j = 0; j < ic.N; ++j) b.normalized(r, j) = b.increments(r, j) / ic.xi[j];
    }
  });
  return b;
}

SampleBatch sample_batch(const ModelSpec& model, int n, int N, int M, std::uint64_t seed,
                         unsigned threads) {
  const IncrementCovariance ic = increment_cov(model, n, N, threads);
  return sample_batch(ic, cholesky(ic), M, seed, threads);
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary batch layout assumes a little-endian host");

void put_u64(std::ostream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw DomainError("truncated batch header");
  return v;
}

}  // namespace

void write_binary(std::ostream& os, const SampleBatch& batch) {
  put_u64(os, static_cast<std::uint64_t>(batch.n));
  put_u64(os, static_cast<std::uint64_t>(batch.N));
  put_u64(os, static_cast<std::uint64_t>(batch.increments.rows()));
  put_u64(os, batch.seed);
  os.write(reinterpret_cast<const char*>(batch.increments.data()),
           static_cast<std::streamsize>(batch.increments.size() * sizeof(double)));
}

SampleBatch read_binary(std::istream& is) {
  SampleBatch b;
  b.n = static_cast<int>(get_u64(is));
  b.N = static_cast<int>(get_u64(is));
  const auto M = static_cast<Eigen::Index>(get_u64(is));
  b.seed = get_u64(is);
  b.increments.resize(M, b.N);
  is.read(reinterpret_cast<char*>(b.increments.data()),
          static_cast<std::streamsize>(b.increments.size() * sizeof(double)));
  if (!is) throw DomainError("truncated batch payload");
  return b;
}

}  // namespace ssgauss
