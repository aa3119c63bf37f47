#include "fbmsig/fbm_sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmsig/expected_signature.hpp"

namespace fbmsig {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

FbmSampler::FbmSampler(double hurst, int m, int d) : hurst_(hurst), m_(m), d_(d) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("sampler: need 0 < H < 1");
  if (m < 1 || d < 1) throw std::invalid_argument("sampler: need m >= 1 and d >= 1");
  Eigen::MatrixXd cov(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double c = covariance((i + 1.0) / m, (j + 1.0) / m, hurst);
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  for (double jitter = 1e-12; llt.info() != Eigen::Success; jitter *= 10.0) {
    if (jitter > 1e-8) throw std::runtime_error("sampler: covariance is not positive definite");
    jitter_ = jitter;
    llt.compute(cov + jitter * Eigen::MatrixXd::Identity(m, m));
  }
  lower_ = llt.matrixL();
}

std::vector<std::vector<double>> FbmSampler::sample(std::uint64_t seed, std::uint64_t stream,
                                                    double scale) const {
  std::mt19937_64 rng = stream_engine(seed, stream);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(m_, d_);
  for (int c = 0; c < d_; ++c) {
    for (int i = 0; i < m_; ++i) z(i, c) = normal(rng);
  }
  const Eigen::MatrixXd values = lower_.triangularView<Eigen::Lower>() * z;
  std::vector<std::vector<double>> out(m_ + 1, std::vector<double>(d_, 0.0));
  for (int i = 0; i < m_; ++i) {
    for (int c = 0; c < d_; ++c) out[i + 1][c] = scale * values(i, c);
  }
  return out;
}

PiecewiseLinearPath FbmSampler::sample_path(std::uint64_t seed, std::uint64_t stream,
                                            double horizon) const {
  if (!(horizon > 0.0)) throw std::invalid_argument("sampler: horizon must be positive");
  const auto values = sample(seed, stream, std::pow(horizon, hurst_));
  std::vector<double> times(m_ + 1);
  for (int i = 0; i < m_; ++i) times[i] = horizon * i / m_;
  times[m_] = horizon;
  return PiecewiseLinearPath::from_spatial(std::move(times), values);
}

std::vector<std::vector<double>> sample_fbm(double hurst, int m, int d, std::uint64_t seed) {
  return FbmSampler(hurst, m, d).sample(seed, 0);
}

}  // namespace fbmsig
