#pragma once

#include <complex>
#include <cstdint>

namespace ophh {

/// Deterministic random stream keyed by (master seed, stream index).
///
/// Each stream is an independent splitmix64 sequence, so a draw depends only
/// on the key and on the position within the stream -- never on scheduling
/// or on other streams. Distributions are generated from raw bits in-house
/// to keep results identical across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01();

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi);

  /// Standard normal (Box-Muller).
  double gaussian();

  std::complex<double> gaussian_complex();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ophh
