#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fbmsig/cubature.hpp"
#include "oracles.hpp"

using namespace fbmsig;

namespace {

bool contains(const std::vector<Word>& ws, const Word& w) {
  return std::find(ws.begin(), ws.end(), w) != ws.end();
}

}  // namespace

TEST(WordWeight, Examples) {
  EXPECT_DOUBLE_EQ(word_weight(Word{1, 1}, 0.7), 2.8);
  EXPECT_DOUBLE_EQ(word_weight(Word{1, 0, 1}, 0.7), 4 * 0.7 + 2);
  EXPECT_DOUBLE_EQ(word_weight(Word{}, 0.7), 0.0);
}

TEST(WordsOfDegree, BrownianDegreeThree) {
  const std::vector<Word> ws = words_of_degree(3, 0.5, 1);
  const std::vector<Word> expected{{}, {0}, {1}, {0, 1}, {1, 0}, {1, 1}, {1, 1, 1}};
  EXPECT_EQ(ws, expected);
}

TEST(WordsOfDegree, FiltersByWeight) {
  const std::vector<Word> ws = words_of_degree(3, 0.75, 1);
  EXPECT_TRUE(contains(ws, Word{1, 1}));
  EXPECT_FALSE(contains(ws, Word{1, 1, 1}));
  EXPECT_EQ(words_of_degree(0, 0.8, 2), std::vector<Word>{Word{}});
  for (const Word& w : words_of_degree(5, 0.6, 2)) EXPECT_LE(word_weight(w, 0.6), 5.0 + 1e-12);
}

TEST(WordsOfDegree, MonotoneInDegreeAndHurst) {
  for (int d : {1, 2}) {
    for (int m = 0; m < 6; ++m) {
      const auto small = words_of_degree(m, 0.6, d);
      const auto big = words_of_degree(m + 1, 0.6, d);
      for (const Word& w : small) EXPECT_TRUE(contains(big, w));
    }
    const auto rough = words_of_degree(5, 0.55, d);
    for (const Word& w : words_of_degree(5, 0.85, d)) EXPECT_TRUE(contains(rough, w));
  }
  EXPECT_THROW(words_of_degree(7, 0.6, 1), std::invalid_argument);
  EXPECT_THROW(words_of_degree(3, 0.6, 3), std::invalid_argument);
}

TEST(LvFormula, EndpointAndSecondMoment) {
  for (double h : {0.5, 0.6, 0.7, 0.9}) {
    const CubatureFormula f = lv_formula(h);
    EXPECT_NO_THROW(f.validate());
    ASSERT_EQ(f.paths.size(), 3u);
    EXPECT_NEAR(f.paths[0].point(3)[1], std::sqrt(3.0), 1e-14);
    double second = 0.0;
    for (std::size_t j = 0; j < 3; ++j) second += f.weights[j] * std::pow(f.paths[j].point(3)[1], 2);
    EXPECT_NEAR(second, 1.0, 1e-14);
    EXPECT_EQ(f.claimed_degree, h < 2.0 / 3.0 ? 5 : 4);
  }
}

TEST(LvFormula, BrownianFirstSlope) {
  const CubatureFormula f = lv_formula(0.5);
  const double slope = 3.0 * f.paths[0].point(1)[1];
  EXPECT_NEAR(slope, std::sqrt(3.0) * (2.0 - std::sqrt(5.5)), 1e-12);
}

TEST(LvFormula, SingleSegmentPathSignature) {
  // the fourth-level coefficient of a straight segment to sqrt(3)
  const auto p = PiecewiseLinearPath::from_spatial({0.0, 1.0}, {{0.0}, {std::sqrt(3.0)}});
  EXPECT_NEAR(path_signature(p, 4).coeff(Word{1, 1, 1, 1}), 3.0 / 8.0, 1e-14);
}

TEST(SolveAnsatz, BothRootsSolveTheSystem) {
  for (double h : {0.5, 0.55, 0.6, 0.7, 0.8, 0.9, 0.99}) {
    for (RootBranch b : {RootBranch::Minus, RootBranch::Plus}) {
      const AnsatzSolution s = solve_ansatz(h, b);
      for (double r : s.system_residuals()) EXPECT_NEAR(r, 0.0, 1e-10) << "H=" << h;
      for (double r : s.continuity_residuals()) EXPECT_NEAR(r, 0.0, 1e-12);
      EXPECT_DOUBLE_EQ(s.a, s.c1);
      EXPECT_DOUBLE_EQ(s.b0, -s.c0);
      EXPECT_DOUBLE_EQ(s.lambda1, 1.0 / 6.0);
      EXPECT_DOUBLE_EQ(s.lambda3, 2.0 / 3.0);
    }
  }
}

TEST(SolveAnsatz, RootsMatchClosedForm) {
  const double s3 = std::sqrt(3.0);
  for (double h : {0.5, 0.65, 0.8}) {
    const double disc = std::sqrt(-96 * h * h + 66 * h + 57);
    EXPECT_NEAR(solve_ansatz(h, RootBranch::Minus).c1, (4 * h * s3 + 2 * s3 - disc) / (2 * h + 1), 1e-12);
    EXPECT_NEAR(solve_ansatz(h, RootBranch::Plus).c1, (4 * h * s3 + 2 * s3 + disc) / (2 * h + 1), 1e-12);
  }
  EXPECT_NEAR(solve_ansatz(0.5, RootBranch::Minus).c1, s3 * (2 - std::sqrt(5.5)), 1e-12);
}

TEST(SolveAnsatz, MinusBranchReproducesLvFormula) {
  for (double h : {0.5, 0.7}) {
    const CubatureFormula a = solve_ansatz(h, RootBranch::Minus).to_formula();
    const CubatureFormula b = lv_formula(h);
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a.paths[j].point(i)[1], b.paths[j].point(i)[1], 1e-13);
    }
  }
}

TEST(IteratedIntegralDirect, AgreesWithChen) {
  const CubatureFormula f = lv_formula(0.6);
  const TruncatedTensor sig = path_signature(f.paths[0], 5);
  for (const Word& w : words_of_degree(6, 0.5, 1)) {
    if (w.size() > 5) continue;
    EXPECT_NEAR(iterated_integral_direct(f.paths[0], w), sig.coeff(w), 1e-13) << w.to_string();
    EXPECT_NEAR(iterated_integral_direct(f.paths[0], w),
                oracle::segment_assignment_coefficient(f.paths[0], w), 1e-13);
  }
}

TEST(VerifyCubature, ClaimedDegreeHolds) {
  for (double h : {0.5, 0.55, 0.6, 0.65, 0.7, 0.8, 0.9}) {
    const CubatureFormula f = lv_formula(h);
    const CubatureReport r = verify_cubature(f, h, f.claimed_degree);
    EXPECT_TRUE(r.passed) << "H=" << h;
    EXPECT_LE(r.max_abs_err, 1e-9);
    EXPECT_LE(r.max_chen_direct_gap, 1e-10);
    EXPECT_GE(r.empirical_degree, f.claimed_degree);
  }
}

TEST(VerifyCubature, PlusBranchAlsoPasses) {
  for (double h : {0.5, 0.6, 0.75, 0.9}) {
    const CubatureFormula f = solve_ansatz(h, RootBranch::Plus).to_formula();
    EXPECT_TRUE(verify_cubature(f, h, f.claimed_degree).passed) << "H=" << h;
  }
}

TEST(VerifyCubature, WordLevelExamples) {
  for (double h : {0.5, 0.6}) {
    const CubatureReport r = verify_cubature(lv_formula(h), h, 5);
    for (const WordCheck& c : r.words) {
      if (c.word == Word{1, 1}) {
        EXPECT_NEAR(c.lhs, 0.5, 1e-15);
        EXPECT_NEAR(c.rhs, 0.5, 1e-14);
      }
      if (c.word == Word{1, 0, 1}) {
        EXPECT_NEAR(c.rhs, (2 * h - 1) / (2 * (2 * h + 1)), 1e-10);
      }
      if (c.word.count(1) % 2 == 1) {
        EXPECT_EQ(c.lhs, 0.0);
        EXPECT_NEAR(c.rhs, 0.0, 1e-15);
      }
    }
  }
}

// The lightest unmatched word, measured rather than assumed.
TEST(VerifyCubature, EmpiricalDegreeProfile) {
  const CubatureReport brownian = verify_cubature(lv_formula(0.5), 0.5, 5);
  EXPECT_EQ(brownian.empirical_degree, 5);
  ASSERT_TRUE(brownian.first_failure.has_value());
  EXPECT_EQ(brownian.first_failure->word, (Word{0, 0, 1, 1}));
  for (double h : {0.6, 0.7}) EXPECT_EQ(verify_cubature(lv_formula(h), h, 4).empirical_degree, 6);
  EXPECT_GE(verify_cubature(lv_formula(0.85), 0.85, 4).empirical_degree, 7);
}

TEST(RescaleFormula, ScalesTimeAndSpace) {
  const CubatureFormula f = lv_formula(0.5);
  const CubatureFormula same = rescale_formula(f, 1.0, 0.5);
  EXPECT_EQ(same.paths[0].point(2)[1], f.paths[0].point(2)[1]);
  const CubatureFormula g = rescale_formula(f, 4.0, 0.5);
  EXPECT_NO_THROW(g.validate());
  EXPECT_DOUBLE_EQ(g.horizon, 4.0);
  EXPECT_DOUBLE_EQ(g.paths[0].point(3)[1], 2.0 * f.paths[0].point(3)[1]);
  EXPECT_DOUBLE_EQ(g.paths[0].times()[1], 4.0 / 3.0);
  for (double h : {0.6, 0.8}) {
    const CubatureFormula r = rescale_formula(lv_formula(h), 2.5, h);
    double v = 0.0;
    for (std::size_t j = 0; j < 3; ++j) v += r.weights[j] * path_signature(r.paths[j], 2).coeff(Word{1, 1});
    EXPECT_NEAR(v, 0.5 * std::pow(2.5, 2 * h), 1e-13);
  }
}

TEST(RescaleFormula, VerifiesOnLongerHorizon) {
  const double h = 0.6;
  const CubatureReport r = verify_cubature(rescale_formula(lv_formula(h), 2.0, h), h, 5);
  EXPECT_TRUE(r.passed);
}
