#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fbmsig/tensor_algebra.hpp"

namespace fbmsig {

/// Independent, reproducible random stream for (seed, stream index).
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream);

/// Exact sampler of d independent fBm channels on the grid i/m, i = 0..m,
/// by Cholesky factorisation of the covariance matrix.
class FbmSampler {
 public:
  /// Throws std::invalid_argument for H outside (0,1), m < 1 or d < 1 and
  /// std::runtime_error if the covariance cannot be factorised even with
  /// diagonal jitter.
  FbmSampler(double hurst, int m, int d);

  double hurst() const { return hurst_; }
  int cells() const { return m_; }
  int dim() const { return d_; }
  /// Diagonal jitter added to make the factorisation succeed (0 if none).
  double jitter() const { return jitter_; }

  /// values[i][c] = B^c(i/m) scaled by `scale`; row 0 is zero.
  std::vector<std::vector<double>> sample(std::uint64_t seed, std::uint64_t stream,
                                          double scale = 1.0) const;

  /// Time-augmented path on [0, horizon]; spatial values are scaled by
  /// horizon^H, which is exact in law by self-similarity.
  PiecewiseLinearPath sample_path(std::uint64_t seed, std::uint64_t stream,
                                  double horizon = 1.0) const;

 private:
  double hurst_;
  int m_;
  int d_;
  double jitter_ = 0.0;
  Eigen::MatrixXd lower_;
};

/// Convenience: one sample with stream index 0.
std::vector<std::vector<double>> sample_fbm(double hurst, int m, int d, std::uint64_t seed);

}  // namespace fbmsig
