#pragma once

#include <array>
#include <cstdint>

namespace ssgauss {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block of
/// four 32-bit words is a pure function of (key, counter), so any stream can
/// be addressed directly without sequential state.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Block operator()(Block counter) const;

 private:
  std::array<std::uint32_t, 2> key_;
};

/// Uniform doubles in (0,1) and standard normals for one stream, identified by
/// (seed, stream, substream). Draw i of the stream is computed from counter i,
/// independent of how many draws were taken before.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0)
      : gen_(seed), stream_(stream), substream_(substream) {}

  /// i-th pair of uniforms packed from one Philox block.
  std::array<double, 2> uniforms(std::uint64_t i) const;
  double uniform(std::uint64_t i) const { return uniforms(i / 2)[i % 2]; }
  double normal(std::uint64_t i) const;

 private:
  Philox4x32 gen_;
  std::uint64_t stream_;
  std::uint32_t substream_;
};

/// Inverse standard normal CDF, Wichura's AS 241 (PPND16); relative accuracy
/// about 1e-16 on (0,1).
double normal_quantile(double p);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

}  // namespace ssgauss
