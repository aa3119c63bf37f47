#include "fbmsig/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fbmsig/gauss_rules.hpp"
#include "fbmsig/oracle_table.hpp"

namespace fbmsig {

namespace {

constexpr double kWeightSlack = 1e-12;
constexpr int kMaxListedDegree = 6;
constexpr int kProbeDegree = 7;

void check_cubature_hurst(double hurst) {
  if (!(hurst >= 0.5 && hurst < 1.0)) {
    throw std::invalid_argument("cubature requires 1/2 <= H < 1");
  }
}

int claimed_degree_for(double hurst) { return hurst < 2.0 / 3.0 ? 5 : 4; }

PiecewiseLinearPath three_piece_path(double v1, double v2, double v3) {
  return PiecewiseLinearPath({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0},
                             {{0.0, 0.0}, {1.0 / 3.0, v1}, {2.0 / 3.0, v2}, {1.0, v3}});
}

CubatureFormula symmetric_formula(double lambda1, double lambda3, double v1, double v2, double v3,
                                  double hurst) {
  CubatureFormula f;
  f.weights = {lambda1, lambda1, lambda3};
  f.paths = {three_piece_path(v1, v2, v3), three_piece_path(-v1, -v2, -v3),
             three_piece_path(0.0, 0.0, 0.0)};
  f.claimed_degree = claimed_degree_for(hurst);
  f.horizon = 1.0;
  return f;
}

std::vector<Word> words_up_to_weight(double max_weight, double hurst, int d) {
  std::vector<Word> out;
  std::vector<int> letters;
  std::function<void(double)> extend = [&](double weight) {
    out.emplace_back(letters);
    for (int l = 0; l <= d; ++l) {
      const double w = weight + 2.0 * hurst + (l == 0 ? 2.0 - 2.0 * hurst : 0.0);
      if (w > max_weight + kWeightSlack) continue;
      letters.push_back(l);
      extend(w);
      letters.pop_back();
    }
  };
  extend(0.0);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

}  // namespace

double word_weight(const Word& word, double hurst) {
  return 2.0 * hurst * static_cast<double>(word.size()) + (2.0 - 2.0 * hurst) * word.count(0);
}

std::vector<Word> words_of_degree(int degree, double hurst, int d) {
  check_cubature_hurst(hurst);
  if (degree < 0 || degree > kMaxListedDegree) {
    throw std::invalid_argument("words_of_degree: degree must be between 0 and 6");
  }
  if (d < 1 || d > 2) throw std::invalid_argument("words_of_degree: need 1 <= d <= 2");
  return words_up_to_weight(degree, hurst, d);
}

void CubatureFormula::validate() const {
  if (weights.empty() || weights.size() != paths.size()) {
    throw std::invalid_argument("cubature formula: need one path per weight");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("cubature formula: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("cubature formula: weights must sum to 1");
  }
  const int width = paths.front().width();
  for (const auto& p : paths) {
    if (p.width() != width) throw std::invalid_argument("cubature formula: mixed path widths");
    for (double x : p.point(0)) {
      if (x != 0.0) throw std::invalid_argument("cubature formula: paths must start at the origin");
    }
    if (std::abs(p.times().back() - horizon) > 1e-12 * std::max(1.0, horizon)) {
      throw std::invalid_argument("cubature formula: paths must end at the horizon");
    }
  }
}

CubatureFormula lv_formula(double hurst) {
  check_cubature_hurst(hurst);
  const double disc = -96.0 * hurst * hurst + 66.0 * hurst + 57.0;
  if (!(disc > 0.0)) throw std::logic_error("lv_formula: negative discriminant");
  const double s3 = std::sqrt(3.0);
  const double alpha = (2.0 * hurst * s3 + s3) / (2.0 * hurst + 1.0);
  const double beta = std::sqrt(disc) / (2.0 * hurst + 1.0);
  // slopes 2a-b, then (a-b)+(2b-a)t, then (b-a)+(2a-b)t
  const double v1 = (2.0 * alpha - beta) / 3.0;
  const double v2 = (alpha - beta) + (2.0 * beta - alpha) * (2.0 / 3.0);
  const double v3 = (beta - alpha) + (2.0 * alpha - beta);
  return symmetric_formula(1.0 / 6.0, 2.0 / 3.0, v1, v2, v3, hurst);
}

std::array<double, 6> AnsatzSolution::system_residuals() const {
  const double H = hurst;
  const double end = c1 + c0;
  const double mid_b = 7.0 * b1 * b1 / 27.0 + b1 * b0 + b0 * b0;
  const double mean = a / 18.0 + b1 / 6.0 + b0 / 3.0;
  const double rhs_sq = 1.0 / (2.0 * lambda1 * (2.0 * H + 1.0));
  return {
      2.0 * lambda1 + lambda3 - 1.0,
      2.0 * lambda1 * end * end - 1.0,
      a * a / 81.0 + mid_b / 3.0 + (19.0 * c1 * c1 / 27.0 + 5.0 * c1 * c0 / 3.0 + c0 * c0) / 3.0 -
          rhs_sq,
      a * a / 81.0 - 2.0 * end * mean + mid_b / 3.0 + 55.0 * c1 * c1 / 81.0 +
          2.0 * c0 * c0 / 3.0 + 4.0 * c1 * c0 / 3.0 - rhs_sq,
      end * mean - a * a / 81.0 - mid_b / 3.0 + 7.0 * c1 * c1 / 162.0 + c1 * c0 / 18.0 -
          (2.0 * H - 1.0) / (4.0 * lambda1 * (2.0 * H + 1.0)),
      lambda1 * std::pow(end, 4) - 1.5,
  };
}

std::array<double, 2> AnsatzSolution::continuity_residuals() const {
  return {a / 3.0 - (b1 / 3.0 + b0), (2.0 * b1 / 3.0 + b0) - (2.0 * c1 / 3.0 + c0)};
}

CubatureFormula AnsatzSolution::to_formula() const {
  return symmetric_formula(lambda1, lambda3, a / 3.0, 2.0 * b1 / 3.0 + b0, c1 + c0, hurst);
}

AnsatzSolution solve_ansatz(double hurst, RootBranch branch) {
  check_cubature_hurst(hurst);
  const double s3 = std::sqrt(3.0);
  AnsatzSolution s;
  s.hurst = hurst;
  s.branch = branch;
  // Dividing the (1,1,1,1) equation by the square of the (1,1) equation
  // gives (c1+c0)^2 = 3, hence lambda1 = 1/6 and lambda3 = 2/3.
  s.lambda1 = 1.0 / 6.0;
  s.lambda3 = 1.0 - 2.0 * s.lambda1;
  // q2 c1^2 + q1 c1 + q0 = 0
  const double q2 = 1.0 / 27.0;
  const double q1 = -4.0 * s3 / 27.0;
  const double q0 = -(5.0 - 8.0 * hurst) / (3.0 * (2.0 * hurst + 1.0));
  const double root = std::sqrt(q1 * q1 - 4.0 * q2 * q0);
  s.c1 = (-q1 + (branch == RootBranch::Plus ? root : -root)) / (2.0 * q2);
  s.c0 = s3 - s.c1;
  s.a = s.c1;
  s.b0 = -s.c0;
  s.b1 = 3.0 * s3 - 2.0 * s.c1;
  return s;
}

double iterated_integral_direct(const PiecewiseLinearPath& path, const Word& word) {
  if (!word.fits_alphabet(path.spatial_dim())) {
    throw std::invalid_argument("iterated_integral_direct: letter outside the path alphabet");
  }
  const int k = static_cast<int>(word.size());
  if (k == 0) return 1.0;
  // the level-j integrand is a polynomial of degree j-1 on each piece
  const QuadratureRule rule = gauss_legendre_unit(std::max(1, (k + 1) / 2));
  const auto& times = path.times();
  std::function<double(int, double)> level = [&](int j, double t) -> double {
    if (j == 0) return 1.0;
    const int letter = word[j - 1];
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < times.size() && times[s] < t; ++s) {
      const double lo = times[s];
      const double hi = std::min(times[s + 1], t);
      const double slope =
          (path.point(s + 1)[letter] - path.point(s)[letter]) / (times[s + 1] - times[s]);
      if (slope == 0.0) continue;
      double inner = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        inner += rule.weights[q] * level(j - 1, lo + (hi - lo) * rule.nodes[q]);
      }
      total += slope * (hi - lo) * inner;
    }
    return total;
  };
  return level(k, times.back());
}

CubatureReport verify_cubature(const CubatureFormula& formula, double hurst, int degree,
                               const QuadConfig& quad, double tolerance) {
  check_cubature_hurst(hurst);
  formula.validate();
  if (degree < 0 || degree > 5) throw std::invalid_argument("verify_cubature: degree must be <= 5");
  if (formula.paths.front().spatial_dim() != 1) {
    throw std::invalid_argument("verify_cubature: only one spatial dimension is supported");
  }

  std::optional<ExpectedSignatureCalculator> calc;
  if (hurst > 0.5) calc.emplace(hurst, quad);

  std::vector<TruncatedTensor> signatures;
  for (const auto& p : formula.paths) signatures.push_back(path_signature(p, kProbeDegree));

  auto check_word = [&](const Word& w) {
    WordCheck c;
    c.word = w;
    c.weight = word_weight(w, hurst);
    const int spatial = w.count_nonzero();
    if (auto v = oracle_value(w, hurst); v && formula.horizon == 1.0) {
      c.lhs = *v;
      c.lhs_source = "table";
    } else if (spatial == 0) {
      c.lhs = std::pow(formula.horizon, static_cast<double>(w.size())) / std::tgamma(w.size() + 1.0);
      c.lhs_source = "time";
    } else if (hurst == 0.5) {
      c.lhs = brownian_expected_word(w) * std::pow(formula.horizon, scaling_exponent(w, hurst));
      c.lhs_source = "brownian";
    } else {
      Estimate e;
      try {
        e = calc->expected_word(w, formula.horizon);
      } catch (const QuadratureError& err) {
        e = err.achieved();
      }
      c.lhs = e.value;
      c.lhs_error = e.error;
      c.lhs_source = "quadrature";
    }
    double rhs = 0.0;
    double rhs_direct = 0.0;
    for (std::size_t j = 0; j < formula.paths.size(); ++j) {
      rhs += formula.weights[j] * signatures[j].coeff(w);
      rhs_direct += formula.weights[j] * iterated_integral_direct(formula.paths[j], w);
    }
    c.rhs = rhs;
    c.rhs_direct = rhs_direct;
    c.abs_err = std::abs(c.lhs - c.rhs);
    c.matched = c.abs_err <= tolerance + c.lhs_error;
    return c;
  };

  CubatureReport rep;
  rep.hurst = hurst;
  rep.degree = degree;
  rep.tolerance = tolerance;
  rep.probe_degree = kProbeDegree;
  rep.empirical_degree = kProbeDegree;

  std::vector<WordCheck> probes;
  for (const Word& w : words_up_to_weight(kProbeDegree, hurst, 1)) probes.push_back(check_word(w));

  double lightest_failure = INFINITY;
  for (const WordCheck& c : probes) {
    rep.max_chen_direct_gap = std::max(rep.max_chen_direct_gap, std::abs(c.rhs - c.rhs_direct));
    if (c.weight <= degree + kWeightSlack) {
      rep.words.push_back(c);
      rep.max_abs_err = std::max(rep.max_abs_err, c.abs_err);
    }
    if (!c.matched && c.weight < lightest_failure) {
      lightest_failure = c.weight;
      rep.first_failure = c;
    }
  }
  if (rep.first_failure) {
    rep.empirical_degree = static_cast<int>(std::ceil(lightest_failure - kWeightSlack)) - 1;
  }
  rep.passed = std::all_of(rep.words.begin(), rep.words.end(),
                           [](const WordCheck& c) { return c.matched; });
  return rep;
}

CubatureFormula rescale_formula(const CubatureFormula& formula, double T, double hurst) {
  if (!(T > 0.0)) throw std::invalid_argument("rescale_formula: T must be positive");
  check_cubature_hurst(hurst);
  CubatureFormula out;
  out.weights = formula.weights;
  out.claimed_degree = formula.claimed_degree;
  out.horizon = formula.horizon * T;
  const double space = std::pow(T, hurst);
  for (const auto& p : formula.paths) {
    std::vector<double> times;
    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < p.num_points(); ++i) {
      times.push_back(p.times()[i] * T);
      std::vector<double> x(p.point(i).begin(), p.point(i).end());
      x[0] = times.back();
      for (std::size_t c = 1; c < x.size(); ++c) x[c] *= space;
      points.push_back(std::move(x));
    }
    out.paths.emplace_back(std::move(times), std::move(points));
  }
  return out;
}

}  // namespace fbmsig
