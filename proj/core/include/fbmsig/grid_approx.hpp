#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbmsig/expected_signature.hpp"
#include "fbmsig/word.hpp"

namespace fbmsig {

/// int_{cell i} int_{cell j} |t-s|^{2H-2} ds dt on the uniform grid of m
/// cells over [0,1].
double cell_pair_integral(int i, int j, int m, double hurst);

/// Raised when an enumeration would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required)
      : std::runtime_error(what), required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

/// Exact expected coefficient of the piecewise-linear interpolation of fBm
/// on m uniform cells, for a word of spatial letters. On each cell the
/// interpolant moves at constant speed, so the covariance of increments is
/// piecewise constant and the simplex integral reduces to a finite sum over
/// weakly increasing cell assignments. Throws BudgetExceeded if the number
/// of assignments C(m+2k-1, 2k) exceeds `budget`.
double approx_expected_word(const Word& word, double hurst, int m,
                            std::uint64_t budget = 20'000'000);

struct GapEstimate {
  int m = 0;
  double exact = 0.0;
  double approx = 0.0;
  double gap = 0.0;        ///< |exact - approx|
  double error_bar = 0.0;  ///< quadrature error on `exact`
};

GapEstimate signature_gap(const Word& word, int m, ExpectedSignatureCalculator& calc);

struct SlopeFit {
  bool fitted = false;
  std::string reason;  ///< why no fit was produced
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS of the log-log residuals
  std::vector<GapEstimate> points;
};

/// Least-squares slope of log gap against log m. Refuses to fit when the
/// gap is identically zero or fewer than four gaps exceed ten times their
/// error bar. Requires at least four grid sizes.
SlopeFit convergence_slope(const Word& word, const std::vector<int>& m_list,
                           ExpectedSignatureCalculator& calc);

struct CoefficientBoundReport {
  double bound = 0.0;            ///< Atilde k(2k-1) / ((k-1)! 2^k)
  double max_scaled_gap = 0.0;   ///< max over m of m^{2H} gap
  int argmax_m = 0;
  bool passed = false;
  std::vector<GapEstimate> points;
};

CoefficientBoundReport coefficient_bound_check(const Word& word, const std::vector<int>& m_list,
                                               ExpectedSignatureCalculator& calc);

}  // namespace fbmsig
