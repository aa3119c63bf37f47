#include "fbmsig/grid_approx.hpp"

#include <cmath>

#include "fbmsig/bound_constants.hpp"
#include "fbmsig/combinatorics.hpp"

namespace fbmsig {

namespace {

// (r+1)^p - 2 r^p + |r-1|^p. For large r the binomial series avoids the
// cancellation of the direct form.
double second_difference(int r, double p) {
  if (r < 8) {
    return std::pow(r + 1.0, p) - 2.0 * std::pow(static_cast<double>(r), p) +
           std::pow(std::abs(r - 1.0), p);
  }
  const double x = 1.0 / r;
  double binom = p;  // C(p, j)
  double xj = x;
  double sum = 0.0;
  for (int j = 2; j < 60; ++j) {
    binom *= (p - j + 1.0) / j;
    xj *= x;
    if (j % 2 != 0) continue;
    const double term = 2.0 * binom * xj;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::pow(static_cast<double>(r), p) * sum;
}

void check_grid_word(const Word& word, double hurst, int m) {
  if (!(hurst > 0.5 && hurst < 1.0)) {
    throw std::invalid_argument("Hurst parameter must satisfy 1/2 < H < 1");
  }
  if (m < 1) throw std::invalid_argument("grid size m must be at least 1");
  if (word.count(0) != 0) {
    throw std::invalid_argument("grid approximation expects spatial letters only");
  }
}

std::uint64_t assignment_count(int m, int n, std::uint64_t cap) {
  // C(m+n-1, n), saturating above cap
  long double c = 1.0L;
  for (int i = 1; i <= n; ++i) {
    c = c * static_cast<long double>(m - 1 + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(c)));
}

}  // namespace

double cell_pair_integral(int i, int j, int m, double hurst) {
  if (!(hurst > 0.5 && hurst < 1.0)) {
    throw std::invalid_argument("Hurst parameter must satisfy 1/2 < H < 1");
  }
  if (m < 1 || i < 0 || j < 0 || i >= m || j >= m) {
    throw std::invalid_argument("cell_pair_integral: cell index out of range");
  }
  const double p = 2.0 * hurst;
  const int r = std::abs(i - j);
  return std::pow(static_cast<double>(m), -p) * second_difference(r, p) / (p * (p - 1.0));
}

double approx_expected_word(const Word& word, double hurst, int m, std::uint64_t budget) {
  check_grid_word(word, hurst, m);
  if (word.empty()) return 1.0;
  const std::vector<Matching> matchings =
      word.size() % 2 == 0 ? compatible_matchings(word) : std::vector<Matching>{};
  if (matchings.empty()) return 0.0;

  const int n = static_cast<int>(word.size());
  const std::uint64_t count = assignment_count(m, n, budget);
  if (count > budget) {
    throw BudgetExceeded("approx_expected_word: " + std::to_string(n) + " letters on " +
                             std::to_string(m) + " cells exceeds the assignment budget",
                         count);
  }

  // Box-averaged kernel c_H m^2 D[i][j] as a function of |i-j|.
  const double p = 2.0 * hurst;
  const double scale = hurst * (p - 1.0) * std::pow(static_cast<double>(m), 2.0 - p) / (p * (p - 1.0));
  std::vector<double> kernel(m);
  for (int r = 0; r < m; ++r) kernel[r] = scale * second_difference(r, p);

  std::vector<int> cells(n, 0);
  double sum = 0.0;
  double comp = 0.0;

  // tie_factor = prod over tie groups of 1/size!
  auto recurse = [&](auto&& self, int pos, int tie_len, double tie_factor) -> void {
    if (pos == n) {
      double leaf = 0.0;
      for (const Matching& mt : matchings) {
        double prod = 1.0;
        for (auto [a, b] : mt.pairs) prod *= kernel[cells[b] - cells[a]];
        leaf += prod;
      }
      const double x = leaf * tie_factor;
      const double t = sum + x;
      comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
      sum = t;
      return;
    }
    const int start = pos == 0 ? 0 : cells[pos - 1];
    for (int c = start; c < m; ++c) {
      cells[pos] = c;
      if (pos > 0 && c == cells[pos - 1]) {
        self(self, pos + 1, tie_len + 1, tie_factor / (tie_len + 1));
      } else {
        self(self, pos + 1, 1, tie_factor);
      }
    }
  };
  recurse(recurse, 0, 0, 1.0);
  return (sum + comp) * std::pow(static_cast<double>(m), -n);
}

GapEstimate signature_gap(const Word& word, int m, ExpectedSignatureCalculator& calc) {
  GapEstimate g;
  g.m = m;
  const Estimate exact = calc.expected_word(word);
  g.exact = exact.value;
  g.error_bar = exact.error;
  g.approx = approx_expected_word(word, calc.hurst(), m);
  g.gap = std::abs(g.exact - g.approx);
  return g;
}

SlopeFit convergence_slope(const Word& word, const std::vector<int>& m_list,
                           ExpectedSignatureCalculator& calc) {
  if (m_list.size() < 4) throw std::invalid_argument("convergence_slope needs at least 4 grid sizes");
  SlopeFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  bool all_zero = true;
  for (int m : m_list) {
    GapEstimate g = signature_gap(word, m, calc);
    if (g.gap > 10.0 * g.error_bar && g.gap > 1e-13) {
      xs.push_back(std::log(static_cast<double>(m)));
      ys.push_back(std::log(g.gap));
    }
    if (g.gap > 1e-13) all_zero = false;
    fit.points.push_back(g);
  }
  if (all_zero) {
    fit.reason = "gap is zero to working precision at every grid size";
    return fit;
  }
  if (xs.size() < 4) {
    fit.reason = "fewer than four gaps exceed ten times their quadrature error bar";
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.fitted = true;
  return fit;
}

CoefficientBoundReport coefficient_bound_check(const Word& word, const std::vector<int>& m_list,
                                               ExpectedSignatureCalculator& calc) {
  if (word.empty() || word.size() % 2 != 0) {
    throw std::invalid_argument("coefficient_bound_check: need a word of even length");
  }
  if (m_list.empty()) throw std::invalid_argument("coefficient_bound_check: empty grid list");
  CoefficientBoundReport rep;
  const int k = static_cast<int>(word.size() / 2);
  rep.bound = convergence_coefficient_bound(calc.hurst(), k);
  for (int m : m_list) {
    GapEstimate g = signature_gap(word, m, calc);
    const double scaled = std::pow(static_cast<double>(m), 2.0 * calc.hurst()) * g.gap;
    if (scaled >= rep.max_scaled_gap) {
      rep.max_scaled_gap = scaled;
      rep.argmax_m = m;
    }
    rep.points.push_back(g);
  }
  rep.passed = rep.max_scaled_gap <= rep.bound;
  return rep;
}

}  // namespace fbmsig
