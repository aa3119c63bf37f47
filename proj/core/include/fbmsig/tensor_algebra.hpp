#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fbmsig/word.hpp"

namespace fbmsig {

/// Dense element of the truncated tensor algebra T^{(L)}(R^w).
///
/// Level k holds w^k coefficients. A word (i_1,...,i_k) is stored at the
/// base-w index with i_1 as the most significant digit.
class TruncatedTensor {
 public:
  TruncatedTensor(int width, int depth);

  static TruncatedTensor identity(int width, int depth);

  int width() const { return width_; }
  int depth() const { return depth_; }

  /// Coefficient of `word`. Throws std::out_of_range if the word is longer
  /// than the depth or uses a letter outside the alphabet.
  double coeff(const Word& word) const;
  void set(const Word& word, double value);

  std::span<const double> level(int k) const { return levels_.at(k); }
  std::span<double> level(int k) { return levels_.at(k); }

 private:
  std::size_t index_of(const Word& word) const;

  int width_;
  int depth_;
  std::vector<std::vector<double>> levels_;
};

/// exp of a single increment, truncated: level k is v^{(x)k} / k!.
TruncatedTensor segment_exponential(std::span<const double> increment, int depth);

/// Truncated tensor product. Both operands must share width and depth.
TruncatedTensor chen_concat(const TruncatedTensor& a, const TruncatedTensor& b);

/// Continuous piecewise-linear path in R^{1+d} whose coordinate 0 is time.
class PiecewiseLinearPath {
 public:
  /// `points[i]` is the value at breakpoint i, with points[i][0] == times[i].
  /// Throws std::invalid_argument if fewer than two breakpoints are given,
  /// times are not strictly increasing, or coordinate 0 disagrees with time.
  PiecewiseLinearPath(std::vector<double> times, std::vector<std::vector<double>> points);

  /// Builds the time-augmented path from spatial values only.
  static PiecewiseLinearPath from_spatial(std::vector<double> times,
                                          const std::vector<std::vector<double>>& spatial);

  std::size_t num_points() const { return times_.size(); }
  std::size_t num_segments() const { return times_.size() - 1; }
  int width() const { return static_cast<int>(points_.front().size()); }
  int spatial_dim() const { return width() - 1; }

  const std::vector<double>& times() const { return times_; }
  std::span<const double> point(std::size_t i) const { return points_.at(i); }
  std::vector<double> increment(std::size_t segment) const;

 private:
  std::vector<double> times_;
  std::vector<std::vector<double>> points_;
};

/// Signature truncated at `depth`, computed by Chen's identity over segments.
TruncatedTensor path_signature(const PiecewiseLinearPath& path, int depth);

}  // namespace fbmsig
