#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fbmsig/expected_signature.hpp"
#include "fbmsig/tensor_algebra.hpp"
#include "fbmsig/word.hpp"

namespace fbmsig {

/// 2H |word| + (2 - 2H) (number of time letters).
double word_weight(const Word& word, double hurst);

/// Every word over {0..d} whose weight is at most `degree`, including the
/// empty word, in shortlex order. Requires 0 <= degree <= 6, 1 <= d <= 2
/// and 1/2 <= H < 1.
std::vector<Word> words_of_degree(int degree, double hurst, int d);

/// Weighted family of time-augmented piecewise-linear paths on [0, horizon].
struct CubatureFormula {
  std::vector<double> weights;
  std::vector<PiecewiseLinearPath> paths;
  int claimed_degree = 0;
  double horizon = 1.0;

  /// Throws std::invalid_argument unless weights are positive and sum to 1,
  /// there is one path per weight, all paths share a width, start at the
  /// origin and span [0, horizon].
  void validate() const;
};

/// Three-path formula for one-dimensional fBm: weights 1/6, 1/6, 2/3; the
/// first path has slopes 2a-b, 2b-a, 2a-b on the thirds of [0,1] with
/// a = sqrt(3) and b = sqrt(-96H^2+66H+57)/(2H+1), the second is its
/// negative and the third stays at zero. Claimed degree 5 for H < 2/3 and
/// 4 otherwise. Requires 1/2 <= H < 1.
CubatureFormula lv_formula(double hurst);

enum class RootBranch {
  Minus,  ///< the root used by lv_formula
  Plus,
};

/// Solution of the moment equations for the ansatz
///   w(t) = a t on [0,1/3], b1 t + b0 on [1/3,2/3], c1 t + c0 on [2/3,1]
/// with weights (l1, l1, l3) on (w, -w, 0).
struct AnsatzSolution {
  double hurst = 0.5;
  RootBranch branch = RootBranch::Minus;
  double lambda1 = 0.0;
  double lambda3 = 0.0;
  double a = 0.0;
  double b1 = 0.0;
  double b0 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  /// lhs - rhs of the six moment equations for the words
  /// (), (1,1), (1,1,0), (0,1,1), (1,0,1), (1,1,1,1).
  std::array<double, 6> system_residuals() const;
  /// Continuity at t = 1/3 and t = 2/3.
  std::array<double, 2> continuity_residuals() const;
  CubatureFormula to_formula() const;
};

/// Solves the reduced quadratic c1^2/27 - c1 4 sqrt(3)/27 = (5-8H)/(3(2H+1))
/// and back-substitutes. Requires 1/2 <= H < 1.
AnsatzSolution solve_ansatz(double hurst, RootBranch branch);

/// Signature coefficient of `word` along `path` by nested Gauss-Legendre
/// integration over the linear pieces, independent of Chen's identity.
double iterated_integral_direct(const PiecewiseLinearPath& path, const Word& word);

struct WordCheck {
  Word word;
  double weight = 0.0;
  double lhs = 0.0;        ///< expected signature coefficient
  double lhs_error = 0.0;  ///< quadrature error bar (0 for closed forms)
  std::string lhs_source;  ///< "table", "time", "brownian" or "quadrature"
  double rhs = 0.0;        ///< cubature side via Chen's identity
  double rhs_direct = 0.0; ///< cubature side via nested quadrature
  double abs_err = 0.0;
  bool matched = false;
};

struct CubatureReport {
  double hurst = 0.5;
  int degree = 0;
  double tolerance = 0.0;
  std::vector<WordCheck> words;  ///< words of weight <= degree
  double max_abs_err = 0.0;
  double max_chen_direct_gap = 0.0;
  bool passed = false;

  /// Largest integer m' <= probe_degree with every word of weight <= m'
  /// matched, and the lightest unmatched word if any.
  int empirical_degree = 0;
  int probe_degree = 0;
  std::optional<WordCheck> first_failure;
};

/// Checks the cubature identity for every word of weight <= degree, and
/// probes heavier words up to weight 7 to measure the empirical degree.
/// Requires degree <= 5 and one spatial dimension. A word matches when
/// |lhs - rhs| <= tolerance + lhs_error.
CubatureReport verify_cubature(const CubatureFormula& formula, double hurst, int degree,
                               const QuadConfig& quad = {}, double tolerance = 1e-9);

/// Same formula on [0, T]: time scaled by T, spatial values by T^H.
CubatureFormula rescale_formula(const CubatureFormula& formula, double T, double hurst);

}  // namespace fbmsig
