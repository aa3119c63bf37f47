#include "fbmsig/tensor_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fbmsig {

TruncatedTensor::TruncatedTensor(int width, int depth) : width_(width), depth_(depth) {
  if (width < 1) throw std::invalid_argument("tensor width must be positive");
  if (depth < 0) throw std::invalid_argument("tensor depth must be non-negative");
  levels_.resize(depth + 1);
  std::size_t size = 1;
  for (int k = 0; k <= depth; ++k) {
    levels_[k].assign(size, 0.0);
    size *= static_cast<std::size_t>(width);
  }
}

TruncatedTensor TruncatedTensor::identity(int width, int depth) {
  TruncatedTensor t(width, depth);
  t.levels_[0][0] = 1.0;
  return t;
}

std::size_t TruncatedTensor::index_of(const Word& word) const {
  if (static_cast<int>(word.size()) > depth_) {
    throw std::out_of_range("word (" + word.to_string() + ") longer than tensor depth " +
                            std::to_string(depth_));
  }
  std::size_t idx = 0;
  for (int l : word.letters()) {
    if (l >= width_) {
      throw std::out_of_range("letter " + std::to_string(l) + " outside alphabet of width " +
                              std::to_string(width_));
    }
    idx = idx * static_cast<std::size_t>(width_) + static_cast<std::size_t>(l);
  }
  return idx;
}

double TruncatedTensor::coeff(const Word& word) const {
  return levels_[word.size()][index_of(word)];
}

void TruncatedTensor::set(const Word& word, double value) {
  levels_[word.size()][index_of(word)] = value;
}

TruncatedTensor segment_exponential(std::span<const double> increment, int depth) {
  const int width = static_cast<int>(increment.size());
  TruncatedTensor out = TruncatedTensor::identity(width, depth);
  for (int k = 1; k <= depth; ++k) {
    auto prev = out.level(k - 1);
    auto cur = out.level(k);
    const double inv_k = 1.0 / k;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const double p = prev[i] * inv_k;
      for (int j = 0; j < width; ++j) {
        cur[i * width + j] = p * increment[j];
      }
    }
  }
  return out;
}

TruncatedTensor chen_concat(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (a.width() != b.width() || a.depth() != b.depth()) {
    throw std::invalid_argument("chen_concat: width/depth mismatch");
  }
  const int depth = a.depth();
  TruncatedTensor out(a.width(), depth);
  for (int n = 0; n <= depth; ++n) {
    auto dst = out.level(n);
    for (int i = 0; i <= n; ++i) {
      auto left = a.level(i);
      auto right = b.level(n - i);
      const std::size_t rs = right.size();
      for (std::size_t u = 0; u < left.size(); ++u) {
        const double lu = left[u];
        if (lu == 0.0) continue;
        double* row = dst.data() + u * rs;
        for (std::size_t v = 0; v < rs; ++v) row[v] += lu * right[v];
      }
    }
  }
  return out;
}

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<double> times,
                                         std::vector<std::vector<double>> points)
    : times_(std::move(times)), points_(std::move(points)) {
  if (times_.size() < 2) throw std::invalid_argument("path needs at least two breakpoints");
  if (points_.size() != times_.size()) {
    throw std::invalid_argument("path: times and points differ in length");
  }
  const std::size_t width = points_.front().size();
  if (width < 1) throw std::invalid_argument("path: points must include the time coordinate");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (points_[i].size() != width) throw std::invalid_argument("path: ragged point dimensions");
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("path: times must be strictly increasing");
    }
    if (points_[i][0] != times_[i]) {
      throw std::invalid_argument("path: coordinate 0 must equal the time parameter");
    }
  }
}

PiecewiseLinearPath PiecewiseLinearPath::from_spatial(
    std::vector<double> times, const std::vector<std::vector<double>>& spatial) {
  std::vector<std::vector<double>> points(spatial.size());
  for (std::size_t i = 0; i < spatial.size(); ++i) {
    points[i].reserve(spatial[i].size() + 1);
    points[i].push_back(i < times.size() ? times[i] : 0.0);
    points[i].insert(points[i].end(), spatial[i].begin(), spatial[i].end());
  }
  return PiecewiseLinearPath(std::move(times), std::move(points));
}

std::vector<double> PiecewiseLinearPath::increment(std::size_t segment) const {
  const auto& a = points_.at(segment);
  const auto& b = points_.at(segment + 1);
  std::vector<double> inc(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) inc[j] = b[j] - a[j];
  return inc;
}

TruncatedTensor path_signature(const PiecewiseLinearPath& path, int depth) {
  TruncatedTensor sig = TruncatedTensor::identity(path.width(), depth);
  for (std::size_t s = 0; s < path.num_segments(); ++s) {
    const auto inc = path.increment(s);
    sig = chen_concat(sig, segment_exponential(inc, depth));
  }
  return sig;
}

}  // namespace fbmsig
