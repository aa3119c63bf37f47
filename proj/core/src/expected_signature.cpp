#include "fbmsig/expected_signature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "fbmsig/combinatorics.hpp"
#include "fbmsig/simplex_kernel.hpp"

namespace fbmsig {

namespace {

constexpr int kMaxSpatialLetters = 6;

void check_hurst(double hurst) {
  if (!(hurst > 0.5 && hurst < 1.0)) {
    throw std::invalid_argument("Hurst parameter must satisfy 1/2 < H < 1");
  }
}

bool has_odd_letter(const Word& word) {
  std::map<int, int> counts;
  for (int l : word.letters()) {
    if (l != 0) ++counts[l];
  }
  for (auto [letter, c] : counts) {
    if (c % 2 != 0) return true;
  }
  return false;
}

}  // namespace

void FbmParams::validate() const {
  check_hurst(hurst);
  if (dim < 1) throw std::invalid_argument("fBm dimension must be at least 1");
}

KernelConstant KernelConstant::for_hurst(double hurst) {
  check_hurst(hurst);
  return KernelConstant{hurst * (2.0 * hurst - 1.0), 2.0 * hurst - 2.0};
}

double covariance(double s, double t, double hurst) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

ExpectedSignatureCalculator::ExpectedSignatureCalculator(double hurst, QuadConfig config)
    : hurst_(hurst), config_(config), kernel_(KernelConstant::for_hurst(hurst)) {
  if (config_.scheme == QuadScheme::SectorGauss && config_.order < 5) {
    throw std::invalid_argument("quadrature order must be at least 5");
  }
  if (config_.scheme == QuadScheme::QuasiRandom && config_.samples < 64) {
    throw std::invalid_argument("quasi-random sample count must be at least 64");
  }
  if (!(config_.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

std::size_t ExpectedSignatureCalculator::cached_integrals() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

Estimate ExpectedSignatureCalculator::pairing_integral(const PairingKey& key) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  SimplexKernelProblem problem;
  problem.points = static_cast<int>(key.pairs.size() * 2);
  problem.pairs = key.pairs;
  problem.runs = key.runs;
  problem.exponent = kernel_.exponent;
  problem.horizon = key.horizon;
  const SimplexKernelIntegral integral(problem);

  Estimate est;
  double coarse;
  if (config_.scheme == QuadScheme::SectorGauss) {
    est.value = integral.gauss(config_.order);
    coarse = integral.gauss(config_.order - 4);
  } else {
    est.value = integral.quasi_random(config_.samples);
    coarse = integral.quasi_random(config_.samples / 4);
  }
  est.error = std::abs(est.value - coarse) +
              8.0 * std::numeric_limits<double>::epsilon() * std::abs(est.value);

  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, est);
  return est;
}

Estimate ExpectedSignatureCalculator::expected_word(const Word& word, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (has_odd_letter(word)) return Estimate{0.0, 0.0};

  const Word spatial = word.spatial_part();
  if (static_cast<int>(spatial.size()) > kMaxSpatialLetters) {
    throw std::invalid_argument("expected_word supports at most 6 spatial letters, got word (" +
                                word.to_string() + ")");
  }

  std::vector<int> runs(1, 0);
  for (int l : word.letters()) {
    if (l == 0) {
      ++runs.back();
    } else {
      runs.push_back(0);
    }
  }

  const int k = static_cast<int>(spatial.size() / 2);
  const double scale = std::pow(kernel_.prefactor, k);
  double sum = 0.0;
  double err = 0.0;
  if (spatial.empty()) {
    const Estimate e = pairing_integral(PairingKey{{}, runs, horizon});
    sum = e.value;
    err = e.error;
  } else {
    for (const Matching& m : compatible_matchings(spatial)) {
      const Estimate e = pairing_integral(PairingKey{m.pairs, runs, horizon});
      sum += e.value;
      err += e.error;
    }
  }
  const Estimate result{scale * sum, scale * err};
  if (result.error > config_.tolerance) {
    throw QuadratureError("expected_word (" + word.to_string() + "): error estimate " +
                              std::to_string(result.error) + " exceeds tolerance " +
                              std::to_string(config_.tolerance),
                          result, config_.tolerance);
  }
  return result;
}

Estimate expected_word(const Word& word, double hurst, const QuadConfig& config, double horizon) {
  ExpectedSignatureCalculator calc(hurst, config);
  return calc.expected_word(word, horizon);
}

double brownian_expected_word(const Word& word) {
  // Unique parse into blocks "0" and "ii".
  int blocks = 0;
  int pairs = 0;
  std::size_t p = 0;
  while (p < word.size()) {
    if (word[p] == 0) {
      ++p;
    } else if (p + 1 < word.size() && word[p + 1] == word[p]) {
      p += 2;
      ++pairs;
    } else {
      return 0.0;
    }
    ++blocks;
  }
  return std::ldexp(1.0, -pairs) / std::tgamma(blocks + 1.0);
}

TruncatedTensor expected_tensor(const FbmParams& params, int depth, const QuadConfig& config) {
  params.validate();
  if (depth < 0 || depth > kMaxSpatialLetters) {
    throw std::invalid_argument("expected_tensor: depth must be between 0 and 6");
  }
  const int width = params.dim + 1;
  TruncatedTensor out(width, depth);
  ExpectedSignatureCalculator calc(params.hurst, config);
  std::map<Word, double> by_canonical;
  for (int len = 0; len <= depth; ++len) {
    std::vector<int> letters(len, 0);
    while (true) {
      const Word w(letters);
      const Word canon = w.canonical_relabel();
      auto it = by_canonical.find(canon);
      if (it == by_canonical.end()) {
        it = by_canonical.emplace(canon, calc.expected_word(canon).value).first;
      }
      out.set(w, it->second);
      int pos = len - 1;
      while (pos >= 0 && letters[pos] == width - 1) letters[pos--] = 0;
      if (pos < 0) break;
      ++letters[pos];
    }
  }
  return out;
}

double scaling_exponent(const Word& word, double hurst) {
  const int time_letters = word.count(0);
  return hurst * static_cast<double>(word.size() - time_letters) + time_letters;
}

DecayReport decay_bound_check(const Word& word, ExpectedSignatureCalculator& calc) {
  if (word.empty() || word.size() % 2 != 0 || word.size() > kMaxSpatialLetters) {
    throw std::invalid_argument("decay_bound_check: need a spatial word of even length <= 6");
  }
  if (word.count(0) != 0) throw std::invalid_argument("decay_bound_check: word has time letters");
  DecayReport r;
  r.word = word;
  r.k = static_cast<int>(word.size() / 2);
  r.distinct_letters =
      static_cast<int>(std::set<int>(word.letters().begin(), word.letters().end()).size());
  r.value = calc.expected_word(word);
  const double norm = static_cast<double>(factorial(r.k)) * std::ldexp(1.0, r.k);
  const double perms = static_cast<double>(factorial(2 * r.k));
  r.bound = 1.0 / norm;
  const CountBound cb = refined_count_bound(r.k, r.distinct_letters);
  r.refined_bound = cb.vanishes ? 0.0 : static_cast<double>(cb.value) / (norm * perms);
  r.symmetrised = static_cast<double>(compatible_matchings(word).size()) / perms;
  r.symmetrised_gap = r.value.value - r.symmetrised;
  r.within_bound = r.value.value <= r.bound + r.value.error;
  r.within_refined_bound = r.value.value <= r.refined_bound + r.value.error;
  return r;
}

DecayReport decay_bound_check(const Word& word, double hurst, const QuadConfig& config) {
  ExpectedSignatureCalculator calc(hurst, config);
  return decay_bound_check(word, calc);
}

}  // namespace fbmsig
