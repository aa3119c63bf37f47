#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbmsig/tensor_algebra.hpp"
#include "fbmsig/word.hpp"

namespace fbmsig {

/// Hurst parameter and number of independent fBm channels.
struct FbmParams {
  double hurst = 0.75;
  int dim = 1;

  /// Throws std::invalid_argument unless 1/2 < hurst < 1 and dim >= 1.
  void validate() const;
};

/// E[dB_s dB_t] = prefactor |t-s|^exponent ds dt for 1/2 < H < 1.
struct KernelConstant {
  double prefactor;
  double exponent;

  static KernelConstant for_hurst(double hurst);
};

/// Cov(B_s, B_t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
double covariance(double s, double t, double hurst);

enum class QuadScheme {
  /// Sector decomposition with Gauss-Jacobi product rules (deterministic).
  SectorGauss,
  /// Same sectors, Halton points; error from two sample sizes.
  QuasiRandom,
};

struct QuadConfig {
  QuadScheme scheme = QuadScheme::SectorGauss;
  /// Nodes per axis for SectorGauss. The error estimate compares against
  /// order - 4.
  int order = 14;
  /// Points per sector for QuasiRandom. The error estimate compares
  /// against samples / 4.
  std::size_t samples = std::size_t{1} << 16;
  /// Absolute tolerance on the error estimate.
  double tolerance = 1e-8;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Raised when a quadrature error estimate exceeds the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, Estimate achieved, double tolerance)
      : std::runtime_error(what), achieved_(achieved), tolerance_(tolerance) {}
  Estimate achieved() const { return achieved_; }
  double tolerance() const { return tolerance_; }

 private:
  Estimate achieved_;
  double tolerance_;
};

/// Exact expected signature coefficients of time-augmented fBm.
///
/// A coefficient is c_H^k times a sum, over matchings of the spatial letters
/// into equal-letter pairs, of simplex integrals of products of
/// |t_b - t_a|^{2H-2}. The simplex integral depends only on the matching and
/// the time-letter runs, so results are memoised per calculator and shared by
/// every word with the same pairing structure. Thread-safe.
class ExpectedSignatureCalculator {
 public:
  explicit ExpectedSignatureCalculator(double hurst, QuadConfig config = {});

  /// Expected coefficient of `word` for the path on [0, horizon].
  /// Throws QuadratureError if the error estimate exceeds the tolerance and
  /// std::invalid_argument for words with more than 6 spatial letters.
  Estimate expected_word(const Word& word, double horizon = 1.0);

  double hurst() const { return hurst_; }
  const QuadConfig& config() const { return config_; }
  std::size_t cached_integrals() const;

 private:
  struct PairingKey {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> runs;
    double horizon;
    auto operator<=>(const PairingKey&) const = default;
  };
  Estimate pairing_integral(const PairingKey& key);

  double hurst_;
  QuadConfig config_;
  KernelConstant kernel_;
  mutable std::mutex mutex_;
  std::map<PairingKey, Estimate> cache_;
};

/// One-shot convenience wrapper around ExpectedSignatureCalculator.
Estimate expected_word(const Word& word, double hurst, const QuadConfig& config = {},
                       double horizon = 1.0);

/// Closed form at H = 1/2 (Brownian motion, Stratonovich signature):
/// the expected signature is exp(e_0 + sum_i e_i (x) e_i / 2).
double brownian_expected_word(const Word& word);

/// All coefficients up to `depth` over letters {0..dim}. Words that are
/// relabelings of one another are computed once.
TruncatedTensor expected_tensor(const FbmParams& params, int depth, const QuadConfig& config = {});

/// Exponent e with E[coefficient over [0,T]] = T^e E[coefficient over [0,1]]:
/// H per spatial letter plus 1 per time letter.
double scaling_exponent(const Word& word, double hurst);

/// Comparison of an expected coefficient with the factorial decay bounds.
struct DecayReport {
  Word word;
  int k = 0;                    ///< half the word length
  int distinct_letters = 0;
  Estimate value;
  double bound = 0.0;           ///< 1 / (k! 2^k)
  double refined_bound = 0.0;   ///< refined count bound / (k! 2^k (2k)!)
  double symmetrised = 0.0;     ///< |compatible matchings| / (2k)!
  double symmetrised_gap = 0.0; ///< value - symmetrised
  bool within_bound = false;
  bool within_refined_bound = false;
};

/// Requires a word of spatial letters only, of even length <= 6.
DecayReport decay_bound_check(const Word& word, double hurst, const QuadConfig& config = {});
DecayReport decay_bound_check(const Word& word, ExpectedSignatureCalculator& calc);

}  // namespace fbmsig
