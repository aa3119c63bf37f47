#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "fbmsig/tensor_algebra.hpp"
#include "oracles.hpp"

using namespace fbmsig;

namespace {

std::vector<Word> all_words(int width, int depth) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int k = 1; k <= depth; ++k) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (int l = 0; l < width; ++l) {
        std::vector<int> letters = w.letters();
        letters.push_back(l);
        next.emplace_back(letters);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

TruncatedTensor random_tensor(int width, int depth, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TruncatedTensor t(width, depth);
  for (int k = 0; k <= depth; ++k) {
    for (double& x : t.level(k)) x = u(rng);
  }
  return t;
}

PiecewiseLinearPath random_path(int segments, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> times{0.0};
  std::vector<std::vector<double>> points{std::vector<double>(d + 1, 0.0)};
  for (int s = 1; s <= segments; ++s) {
    times.push_back(times.back() + 0.2 + 0.5 * (u(rng) + 1.0));
    std::vector<double> p = points.back();
    p[0] = times.back();
    for (int c = 1; c <= d; ++c) p[c] += u(rng);
    points.push_back(p);
  }
  return PiecewiseLinearPath(times, points);
}

// Composite trapezoid rule for the iterated integral, one segment-fine grid
// per level with derivative values taken at cell midpoints.
double trapezoid_iterated(const PiecewiseLinearPath& path, const Word& word, int cells_per_segment) {
  std::vector<double> t;
  std::vector<std::vector<double>> dx;
  for (std::size_t s = 0; s < path.num_segments(); ++s) {
    const double a = path.times()[s];
    const double b = path.times()[s + 1];
    const std::vector<double> inc = path.increment(s);
    for (int c = 0; c < cells_per_segment; ++c) {
      t.push_back(a + (b - a) * c / cells_per_segment);
      std::vector<double> step(inc.size());
      for (std::size_t i = 0; i < inc.size(); ++i) step[i] = inc[i] / cells_per_segment;
      dx.push_back(step);
    }
  }
  const std::size_t n = dx.size();
  // running[j] = iterated integral of the word prefix up to the left edge of cell j
  std::vector<double> running(n + 1, 1.0);
  for (std::size_t pos = 0; pos < word.size(); ++pos) {
    std::vector<double> next(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      next[j + 1] = next[j] + 0.5 * (running[j] + running[j + 1]) * dx[j][word[pos]];
    }
    running = std::move(next);
  }
  return running[n];
}

}  // namespace

TEST(TruncatedTensor, IdentityAndCoefficientAccess) {
  TruncatedTensor id = TruncatedTensor::identity(3, 4);
  EXPECT_EQ(id.coeff(Word{}), 1.0);
  EXPECT_EQ(id.coeff(Word{1, 2}), 0.0);
  id.set(Word{2, 0, 1}, 0.25);
  EXPECT_EQ(id.coeff(Word{2, 0, 1}), 0.25);
  EXPECT_THROW(id.coeff(Word{1, 1, 1, 1, 1}), std::out_of_range);
  EXPECT_THROW(id.coeff(Word{3}), std::out_of_range);
  EXPECT_THROW(TruncatedTensor(2, -1), std::invalid_argument);
}

TEST(SegmentExponential, ZeroIncrementIsIdentity) {
  const std::vector<double> zero{0.0, 0.0, 0.0};
  const TruncatedTensor t = segment_exponential(zero, 4);
  for (const Word& w : all_words(3, 4)) EXPECT_EQ(t.coeff(w), w.empty() ? 1.0 : 0.0);
}

TEST(SegmentExponential, UnitSpatialIncrement) {
  const std::vector<double> inc{0.0, 1.0};
  const TruncatedTensor t = segment_exponential(inc, 2);
  EXPECT_EQ(t.coeff(Word{}), 1.0);
  EXPECT_EQ(t.coeff(Word{1}), 1.0);
  EXPECT_EQ(t.coeff(Word{1, 1}), 0.5);
  EXPECT_EQ(t.coeff(Word{0, 1}), 0.0);
  EXPECT_EQ(t.coeff(Word{0, 0}), 0.0);
}

TEST(SegmentExponential, MixedIncrement) {
  const std::vector<double> inc{1.0, 2.0};
  const TruncatedTensor t = segment_exponential(inc, 2);
  EXPECT_DOUBLE_EQ(t.coeff(Word{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(t.coeff(Word{1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(t.coeff(Word{1, 1}), 2.0);
}

TEST(ChenConcat, IdentityIsNeutral) {
  std::mt19937_64 rng(7);
  const TruncatedTensor a = random_tensor(3, 4, rng);
  const TruncatedTensor id = TruncatedTensor::identity(3, 4);
  const TruncatedTensor left = chen_concat(id, a);
  const TruncatedTensor right = chen_concat(a, id);
  for (const Word& w : all_words(3, 4)) {
    EXPECT_EQ(left.coeff(w), a.coeff(w));
    EXPECT_EQ(right.coeff(w), a.coeff(w));
  }
}

TEST(ChenConcat, CollinearSegmentsMerge) {
  const std::vector<double> delta{0.5, 1.5, -0.7};
  const std::vector<double> twice{1.0, 3.0, -1.4};
  const TruncatedTensor a = segment_exponential(delta, 5);
  const TruncatedTensor joined = chen_concat(a, a);
  const TruncatedTensor direct = segment_exponential(twice, 5);
  for (const Word& w : all_words(3, 5)) EXPECT_NEAR(joined.coeff(w), direct.coeff(w), 1e-14);
}

TEST(ChenConcat, HandExpandedSplitSum) {
  const std::vector<double> d1{1.0, 1.0};
  const std::vector<double> d2{1.0, -1.0};
  const TruncatedTensor t = chen_concat(segment_exponential(d1, 2), segment_exponential(d2, 2));
  EXPECT_NEAR(t.coeff(Word{1, 1}), 0.0, 1e-15);
}

TEST(ChenConcat, Associative) {
  std::mt19937_64 rng(11);
  for (int depth = 1; depth <= 5; ++depth) {
    const TruncatedTensor a = random_tensor(3, depth, rng);
    const TruncatedTensor b = random_tensor(3, depth, rng);
    const TruncatedTensor c = random_tensor(3, depth, rng);
    const TruncatedTensor lhs = chen_concat(a, chen_concat(b, c));
    const TruncatedTensor rhs = chen_concat(chen_concat(a, b), c);
    for (const Word& w : all_words(3, depth)) EXPECT_NEAR(lhs.coeff(w), rhs.coeff(w), 1e-14);
  }
}

TEST(ChenConcat, RejectsMismatchedShapes) {
  EXPECT_THROW(chen_concat(TruncatedTensor(2, 3), TruncatedTensor(3, 3)), std::invalid_argument);
  EXPECT_THROW(chen_concat(TruncatedTensor(2, 3), TruncatedTensor(2, 2)), std::invalid_argument);
}

TEST(PiecewiseLinearPath, ValidatesInput) {
  EXPECT_THROW(PiecewiseLinearPath({0.0}, {{0.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(PiecewiseLinearPath({0.0, 0.0}, {{0.0, 0.0}, {0.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(PiecewiseLinearPath({0.0, 1.0}, {{0.0, 0.0}, {0.5, 1.0}}), std::invalid_argument);
  const auto p = PiecewiseLinearPath::from_spatial({0.0, 0.5, 1.0}, {{0.0}, {1.0}, {-1.0}});
  EXPECT_EQ(p.num_segments(), 2u);
  EXPECT_EQ(p.spatial_dim(), 1);
  EXPECT_EQ(p.increment(1), (std::vector<double>{0.5, -2.0}));
}

TEST(PathSignature, StraightLine) {
  const auto p = PiecewiseLinearPath::from_spatial({0.0, 1.0}, {{0.0}, {1.0}});
  EXPECT_DOUBLE_EQ(path_signature(p, 2).coeff(Word{1, 1}), 0.5);
}

TEST(PathSignature, SingleSegmentEqualsExponential) {
  const auto p = PiecewiseLinearPath::from_spatial({0.0, 2.0}, {{0.0, 0.0}, {1.0, -3.0}});
  const std::vector<double> inc{2.0, 1.0, -3.0};
  const TruncatedTensor a = path_signature(p, 4);
  const TruncatedTensor b = segment_exponential(inc, 4);
  for (const Word& w : all_words(3, 4)) EXPECT_DOUBLE_EQ(a.coeff(w), b.coeff(w));
}

TEST(PathSignature, OddReflectionFlipsSign) {
  std::mt19937_64 rng(5);
  const PiecewiseLinearPath p = random_path(3, 2, rng);
  std::vector<std::vector<double>> flipped;
  for (std::size_t i = 0; i < p.num_points(); ++i) {
    std::vector<double> pt(p.point(i).begin(), p.point(i).end());
    pt[1] = -pt[1];
    flipped.push_back(pt);
  }
  const TruncatedTensor a = path_signature(p, 4);
  const TruncatedTensor b = path_signature(PiecewiseLinearPath(p.times(), flipped), 4);
  for (const Word& w : all_words(3, 4)) {
    const double sign = w.count(1) % 2 == 0 ? 1.0 : -1.0;
    EXPECT_NEAR(b.coeff(w), sign * a.coeff(w), 1e-14);
  }
}

TEST(PathSignature, MatchesSegmentAssignmentOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const PiecewiseLinearPath p = random_path(4, 2, rng);
    const TruncatedTensor sig = path_signature(p, 5);
    for (const Word& w : all_words(3, 5)) {
      EXPECT_NEAR(sig.coeff(w), oracle::segment_assignment_coefficient(p, w), 1e-12)
          << w.to_string();
    }
  }
}

TEST(PathSignature, MatchesTrapezoidQuadrature) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 3; ++trial) {
    const PiecewiseLinearPath p = random_path(3, 2, rng);
    const TruncatedTensor sig = path_signature(p, 3);
    for (const Word& w : all_words(3, 3)) {
      // error is O(h^2); 8000 cells per segment reaches 1e-8 here
      EXPECT_NEAR(sig.coeff(w), trapezoid_iterated(p, w, 8000), 1e-8) << w.to_string();
    }
  }
}

TEST(PathSignature, ShuffleOfSingleLetters) {
  std::mt19937_64 rng(17);
  const PiecewiseLinearPath p = random_path(5, 2, rng);
  const TruncatedTensor sig = path_signature(p, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(sig.coeff(Word{i}) * sig.coeff(Word{j}),
                  sig.coeff(Word{i, j}) + sig.coeff(Word{j, i}), 1e-12);
    }
  }
}
