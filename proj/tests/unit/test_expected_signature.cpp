#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fbmsig/combinatorics.hpp"
#include "fbmsig/expected_signature.hpp"
#include "fbmsig/oracle_table.hpp"
#include "oracles.hpp"

using namespace fbmsig;

namespace {

std::vector<Word> words_up_to(int max_letter, int depth) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int k = 1; k <= depth; ++k) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (int l = 0; l <= max_letter; ++l) {
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

}  // namespace

TEST(Covariance, Examples) {
  for (double h : {0.3, 0.6, 0.9}) {
    EXPECT_DOUBLE_EQ(covariance(1.0, 1.0, h), 1.0);
    EXPECT_DOUBLE_EQ(covariance(0.0, 0.7, h), 0.0);
    EXPECT_DOUBLE_EQ(covariance(0.4, 0.7, h), covariance(0.7, 0.4, h));
    EXPECT_NEAR(covariance(1.7, 1.7, h), std::pow(1.7, 2 * h), 1e-15);
  }
  EXPECT_NEAR(covariance(1.0, 2.0, 0.75), std::sqrt(2.0), 1e-15);
}

TEST(FbmParams, Validation) {
  EXPECT_THROW((FbmParams{0.5, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((FbmParams{1.0, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((FbmParams{0.7, 0}).validate(), std::invalid_argument);
  EXPECT_NO_THROW((FbmParams{0.7, 2}).validate());
}

TEST(ExpectedWord, ClosedFormTable) {
  for (double h : {0.55, 0.6, 0.75, 0.9}) {
    ExpectedSignatureCalculator calc(h);
    for (const OracleEntry& e : oracle_table()) {
      EXPECT_NEAR(calc.expected_word(e.word).value, evaluate_expression(e.expression, h), 1e-12)
          << e.word.to_string() << " H=" << h;
    }
  }
}

TEST(ExpectedWord, ClosedFormExamples) {
  const double h = 0.7;
  EXPECT_EQ(expected_word(Word{1}, h).value, 0.0);
  EXPECT_NEAR(expected_word(Word{1, 1}, h).value, 0.5, 1e-13);
  EXPECT_NEAR(expected_word(Word{1, 0, 1}, h).value, (2 * h - 1) / (2 * (2 * h + 1)), 1e-13);
  EXPECT_NEAR(expected_word(Word{0, 1, 1}, h).value, 1 / (2 * (2 * h + 1)), 1e-13);
  EXPECT_NEAR(expected_word(Word{1, 1, 1, 1}, h).value, 0.125, 1e-13);
}

TEST(ExpectedWord, OddLetterCountsVanishExactly) {
  ExpectedSignatureCalculator calc(0.8);
  for (const Word& w : {Word{1, 2}, Word{1, 1, 2}, Word{2, 0, 1, 1, 1}, Word{1, 2, 1, 2, 1, 3}}) {
    const Estimate e = calc.expected_word(w);
    EXPECT_EQ(e.value, 0.0) << w.to_string();
    EXPECT_EQ(e.error, 0.0);
  }
  EXPECT_EQ(calc.cached_integrals(), 0u);
}

TEST(ExpectedWord, PureTimeWords) {
  EXPECT_NEAR(expected_word(Word{0, 0, 0}, 0.6).value, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(expected_word(Word{0, 0}, 0.6, {}, 3.0).value, 4.5, 1e-14);
}

// Values frozen from the sector quadrature after agreement with the nested
// tanh-sinh oracle to 1e-11.
TEST(ExpectedWord, FrozenLevelFourValues) {
  struct Case {
    Word word;
    double hurst;
    double value;
  };
  const Case cases[] = {
      {{1, 2, 1, 2}, 0.75, 0.0201189221814892},
      {{1, 1, 2, 2}, 0.75, 0.0736310778185108},
      {{1, 2, 2, 1}, 0.75, 0.03125},
      {{1, 2, 1, 2}, 0.6, 0.0053410565369532},
      {{1, 1, 2, 2}, 0.6, 0.101801800605904},
      {{1, 2, 2, 1}, 0.6, 0.0178571428571429},
  };
  for (const Case& c : cases) {
    EXPECT_NEAR(expected_word(c.word, c.hurst).value, c.value, 1e-13) << c.word.to_string();
  }
}

TEST(ExpectedWord, AgreesWithTanhSinhOracle) {
  const std::vector<Word> words{{1, 2, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 1}, {1, 0, 1}, {0, 1, 0, 1}, {1, 0, 0, 1}};
  for (double h : {0.6, 0.85}) {
    ExpectedSignatureCalculator calc(h);
    for (const Word& w : words) {
      const double ref = oracle::expected_word_tanh_sinh(w, h, 1.0, 3);
      EXPECT_NEAR(calc.expected_word(w).value, ref, 1e-8) << w.to_string() << " H=" << h;
    }
  }
}

TEST(ExpectedWord, ScalingLawOnRescaledSimplex) {
  const double h = 0.7;
  ExpectedSignatureCalculator calc(h);
  for (const Word& w : {Word{1, 0, 1}, Word{0, 1, 1}, Word{1, 2, 1, 2}}) {
    const double unit = calc.expected_word(w).value;
    for (double T : {0.5, 2.0}) {
      const double ref = oracle::expected_word_tanh_sinh(w, h, T, 3);
      const double scaled = std::pow(T, scaling_exponent(w, h)) * unit;
      EXPECT_NEAR(calc.expected_word(w, T).value, ref, 1e-6 * std::abs(ref) + 1e-12);
      EXPECT_NEAR(scaled, ref, 1e-6 * std::abs(ref) + 1e-12);
    }
  }
}

TEST(ExpectedWord, RelabelInvariance) {
  ExpectedSignatureCalculator calc(0.65);
  const double a = calc.expected_word(Word{1, 2, 0, 1, 2}).value;
  EXPECT_NEAR(calc.expected_word(Word{2, 1, 0, 2, 1}).value, a, 1e-14);
  EXPECT_NEAR(calc.expected_word(Word{3, 1, 0, 3, 1}).value, a, 1e-14);
  const double b = calc.expected_word(Word{1, 1, 2, 3, 3, 2}).value;
  EXPECT_NEAR(calc.expected_word(Word{3, 3, 1, 2, 2, 1}).value, b, 1e-14);
}

TEST(ExpectedWord, QuasiRandomSchemeAgrees) {
  QuadConfig qr;
  qr.scheme = QuadScheme::QuasiRandom;
  qr.samples = 1 << 14;
  qr.tolerance = 1e-3;
  for (const Word& w : {Word{1, 2, 1, 2}, Word{1, 1, 2, 2, 1, 1}}) {
    const Estimate exact = expected_word(w, 0.75);
    const Estimate approx = expected_word(w, 0.75, qr);
    EXPECT_NEAR(approx.value, exact.value, 1e-3 * std::abs(exact.value)) << w.to_string();
  }
}

TEST(ExpectedWord, ReportsToleranceFailure) {
  QuadConfig strict;
  strict.order = 6;
  strict.tolerance = 1e-30;
  try {
    expected_word(Word{1, 2, 1, 2}, 0.6, strict);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_GT(e.achieved().error, 1e-30);
    EXPECT_EQ(e.tolerance(), 1e-30);
  }
}

TEST(ExpectedWord, RejectsUnsupportedInput) {
  EXPECT_THROW(expected_word(Word{1, 1, 1, 1, 1, 1, 1, 1}, 0.7), std::invalid_argument);
  EXPECT_THROW(expected_word(Word{1, 1}, 0.5), std::invalid_argument);
  EXPECT_THROW(expected_word(Word{1, 1}, 0.7, {}, 0.0), std::invalid_argument);
}

TEST(ExpectedWord, CalculatorSharesPairingIntegrals) {
  ExpectedSignatureCalculator calc(0.75);
  calc.expected_word(Word{1, 2, 1, 2});
  const std::size_t n = calc.cached_integrals();
  calc.expected_word(Word{2, 1, 2, 1});
  calc.expected_word(Word{1, 3, 1, 3});
  EXPECT_EQ(calc.cached_integrals(), n);
}

TEST(BrownianClosedForm, MatchesTensorExponentialSeries) {
  for (const Word& w : words_up_to(2, 6)) {
    EXPECT_NEAR(brownian_expected_word(w), oracle::brownian_series_coefficient(w, 2), 1e-15)
        << w.to_string();
  }
}

TEST(BrownianClosedForm, IsTheLimitAsHurstDecreases) {
  // the exact coefficients are continuous in H at 1/2
  for (const Word& w : {Word{1, 1, 2, 2}, Word{1, 0, 1}, Word{0, 1, 1}, Word{1, 1, 1, 1}}) {
    EXPECT_NEAR(expected_word(w, 0.5005).value, brownian_expected_word(w), 2e-3) << w.to_string();
  }
}

TEST(ExpectedTensor, LowDepthStructure) {
  const TruncatedTensor t1 = expected_tensor(FbmParams{0.7, 2}, 1);
  EXPECT_EQ(t1.coeff(Word{}), 1.0);
  EXPECT_EQ(t1.coeff(Word{0}), 1.0);
  EXPECT_EQ(t1.coeff(Word{1}), 0.0);
  EXPECT_EQ(t1.coeff(Word{2}), 0.0);
  const TruncatedTensor t2 = expected_tensor(FbmParams{0.7, 2}, 2);
  EXPECT_NEAR(t2.coeff(Word{1, 1}), 0.5, 1e-13);
  EXPECT_NEAR(t2.coeff(Word{2, 2}), 0.5, 1e-13);
  EXPECT_EQ(t2.coeff(Word{1, 2}), 0.0);
  EXPECT_EQ(t2.coeff(Word{2, 1}), 0.0);
}

TEST(ExpectedTensor, AgreesWithWordwiseValues) {
  const double h = 0.8;
  const TruncatedTensor t = expected_tensor(FbmParams{h, 2}, 4);
  ExpectedSignatureCalculator calc(h);
  for (const Word& w : words_up_to(2, 4)) {
    EXPECT_NEAR(t.coeff(w), calc.expected_word(w).value, 1e-14) << w.to_string();
  }
}

TEST(ScalingExponent, Examples) {
  EXPECT_DOUBLE_EQ(scaling_exponent(Word{1, 1}, 0.7), 1.4);
  EXPECT_DOUBLE_EQ(scaling_exponent(Word{0}, 0.7), 1.0);
  EXPECT_DOUBLE_EQ(scaling_exponent(Word{1, 0, 1}, 0.7), 2.4);
}

TEST(DecayBound, SingleLetterWordsAttainTheBound) {
  ExpectedSignatureCalculator calc(0.75);
  const DecayReport r = decay_bound_check(Word{1, 1, 1, 1}, calc);
  EXPECT_NEAR(r.value.value, 0.125, 1e-12);
  EXPECT_DOUBLE_EQ(r.bound, 0.125);
  EXPECT_TRUE(r.within_bound);
  const DecayReport r6 = decay_bound_check(Word{2, 2, 2, 2, 2, 2}, calc);
  EXPECT_NEAR(r6.value.value, 1.0 / 48.0, 1e-10);
  EXPECT_TRUE(r6.within_bound);
}

TEST(DecayBound, MixedWordsAreStrictlyBelow) {
  const DecayReport r = decay_bound_check(Word{1, 1, 2, 2}, 0.75);
  EXPECT_LT(r.value.value, r.bound - 1e-3);
  EXPECT_TRUE(r.within_bound);
  const DecayReport z = decay_bound_check(Word{1, 2}, 0.75);
  EXPECT_EQ(z.value.value, 0.0);
  EXPECT_DOUBLE_EQ(z.bound, 0.5);
}

// The value of a mixed word is not the symmetrised count |matchings|/(2k)!,
// and it can exceed the refined bound built from that count.
TEST(DecayBound, SymmetrisedCandidateDiffersForMixedWords) {
  const DecayReport r = decay_bound_check(Word{1, 1, 2, 2}, 0.75);
  EXPECT_NEAR(r.symmetrised, 1.0 / 24.0, 1e-15);
  EXPECT_NEAR(r.refined_bound, 1.0 / 24.0, 1e-15);
  EXPECT_GT(std::abs(r.symmetrised_gap), 1e-2);
  EXPECT_FALSE(r.within_refined_bound);
  const DecayReport single = decay_bound_check(Word{1, 1, 1, 1}, 0.75);
  EXPECT_NEAR(single.symmetrised_gap, 0.0, 1e-12);
}
