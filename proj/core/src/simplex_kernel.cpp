#include "fbmsig/simplex_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

#include "fbmsig/gauss_rules.hpp"

namespace fbmsig {

namespace {

constexpr int kMaxVars = 8;
constexpr int kMaxSplitDepth = 64;

using Exponents = std::array<std::int16_t, kMaxVars>;

struct Term {
  double coeff;
  Exponents exps;
};

// prod of (sum of terms)^power
struct Factor {
  std::vector<Term> terms;
  double power;
};

// coeff * prod_v x_v^mono[v] * prod_f factor_f(x), integrated over [0,1]^dim.
struct Sector {
  int dim = 0;
  double coeff = 1.0;
  std::array<double, kMaxVars> mono{};
  std::vector<Factor> factors;
  int depth = 0;
};

void merge_like_terms(Factor& f) {
  std::sort(f.terms.begin(), f.terms.end(),
            [](const Term& a, const Term& b) { return a.exps < b.exps; });
  std::vector<Term> merged;
  for (const Term& t : f.terms) {
    if (!merged.empty() && merged.back().exps == t.exps) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  f.terms = std::move(merged);
}

// Pulls common monomials out of every factor and absorbs single-term factors.
void normalize(Sector& s) {
  std::vector<Factor> kept;
  for (Factor& f : s.factors) {
    merge_like_terms(f);
    for (int v = 0; v < s.dim; ++v) {
      std::int16_t lo = f.terms.front().exps[v];
      for (const Term& t : f.terms) lo = std::min(lo, t.exps[v]);
      if (lo == 0) continue;
      for (Term& t : f.terms) t.exps[v] = static_cast<std::int16_t>(t.exps[v] - lo);
      s.mono[v] += f.power * lo;
    }
    if (f.terms.size() == 1) {
      s.coeff *= std::pow(f.terms.front().coeff, f.power);
      continue;
    }
    kept.push_back(std::move(f));
  }
  s.factors = std::move(kept);
}

bool has_constant_term(const Factor& f, int dim) {
  for (const Term& t : f.terms) {
    bool constant = true;
    for (int v = 0; v < dim && constant; ++v) constant = t.exps[v] == 0;
    if (constant) return true;
  }
  return false;
}

// Smallest set of variables that meets every term of f.
std::vector<int> minimal_hitting_set(const Factor& f, int dim) {
  const unsigned full = 1u << dim;
  for (int size = 1; size <= dim; ++size) {
    for (unsigned mask = 1; mask < full; ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      bool hits_all = true;
      for (const Term& t : f.terms) {
        bool hit = false;
        for (int v = 0; v < dim && !hit; ++v) hit = (mask >> v & 1u) && t.exps[v] > 0;
        if (!hit) {
          hits_all = false;
          break;
        }
      }
      if (hits_all) {
        std::vector<int> set;
        for (int v = 0; v < dim; ++v) {
          if (mask >> v & 1u) set.push_back(v);
        }
        return set;
      }
    }
  }
  throw std::logic_error("sector decomposition: factor vanishes identically");
}

// Sub-sector where x_j dominates the other variables of `set`:
// x_i -> x_j x_i for i in set \ {j}.
Sector split_child(const Sector& s, const std::vector<int>& set, int j) {
  Sector c = s;
  c.depth = s.depth + 1;
  for (int i : set) {
    if (i == j) continue;
    c.mono[j] += s.mono[i] + 1.0;
  }
  for (Factor& f : c.factors) {
    for (Term& t : f.terms) {
      int add = 0;
      for (int i : set) {
        if (i != j) add += t.exps[i];
      }
      t.exps[j] = static_cast<std::int16_t>(t.exps[j] + add);
    }
  }
  return c;
}

std::vector<Sector> decompose(std::vector<Sector> roots) {
  std::vector<Sector> done;
  std::vector<Sector> work = std::move(roots);
  while (!work.empty()) {
    Sector s = std::move(work.back());
    work.pop_back();
    normalize(s);
    const Factor* bad = nullptr;
    for (const Factor& f : s.factors) {
      if (!has_constant_term(f, s.dim)) {
        bad = &f;
        break;
      }
    }
    if (bad == nullptr) {
      done.push_back(std::move(s));
      continue;
    }
    if (s.depth >= kMaxSplitDepth) {
      throw std::runtime_error("sector decomposition did not terminate");
    }
    const std::vector<int> set = minimal_hitting_set(*bad, s.dim);
    for (int j : set) work.push_back(split_child(s, set, j));
  }
  for (const Sector& s : done) {
    for (int v = 0; v < s.dim; ++v) {
      if (!(s.mono[v] > -1.0)) {
        throw std::logic_error("sector decomposition produced a non-integrable weight");
      }
    }
  }
  return done;
}

double neumaier_add(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
  return sum;
}

// Flattened factor for fast evaluation: per term, the (var, exponent) list.
struct FlatTerm {
  double coeff;
  int n;
  std::array<std::int16_t, kMaxVars> var;
  std::array<std::int16_t, kMaxVars> exp;
};
struct FlatFactor {
  std::vector<FlatTerm> terms;
  double power;
};

std::vector<FlatFactor> flatten(const Sector& s, std::array<int, kMaxVars>& max_exp) {
  max_exp.fill(0);
  std::vector<FlatFactor> out;
  for (const Factor& f : s.factors) {
    FlatFactor ff{{}, f.power};
    for (const Term& t : f.terms) {
      FlatTerm ft{t.coeff, 0, {}, {}};
      for (int v = 0; v < s.dim; ++v) {
        if (t.exps[v] == 0) continue;
        ft.var[ft.n] = static_cast<std::int16_t>(v);
        ft.exp[ft.n] = t.exps[v];
        ++ft.n;
        max_exp[v] = std::max<int>(max_exp[v], t.exps[v]);
      }
      ff.terms.push_back(ft);
    }
    out.push_back(std::move(ff));
  }
  return out;
}

double evaluate_factors(const std::vector<FlatFactor>& factors,
                        const std::array<const double*, kMaxVars>& point_powers,
                        const std::array<int, kMaxVars>& stride) {
  double value = 1.0;
  for (const FlatFactor& f : factors) {
    double p = 0.0;
    for (const FlatTerm& t : f.terms) {
      double m = t.coeff;
      for (int q = 0; q < t.n; ++q) m *= point_powers[t.var[q]][t.exp[q] * stride[t.var[q]]];
      p += m;
    }
    value *= std::pow(p, f.power);
  }
  return value;
}

class RuleCache {
 public:
  const QuadratureRule& get(int order, double beta) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(order, beta);
    auto it = rules_.find(key);
    if (it == rules_.end()) it = rules_.emplace(key, gauss_jacobi_unit(order, beta)).first;
    return it->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, double>, QuadratureRule> rules_;
};

double integrate_sector_gauss(const Sector& s, int order, RuleCache& cache) {
  std::array<int, kMaxVars> max_exp{};
  const std::vector<FlatFactor> factors = flatten(s, max_exp);
  if (s.dim == 0) {
    std::array<const double*, kMaxVars> none{};
    std::array<int, kMaxVars> stride{};
    return s.coeff * evaluate_factors(factors, none, stride);
  }

  // powers[v][e * order + i] = node_i^e
  std::array<std::vector<double>, kMaxVars> powers;
  std::array<const QuadratureRule*, kMaxVars> rules{};
  std::array<int, kMaxVars> stride{};
  for (int v = 0; v < s.dim; ++v) {
    rules[v] = &cache.get(order, s.mono[v]);
    stride[v] = order;
    powers[v].assign(static_cast<std::size_t>(max_exp[v] + 1) * order, 1.0);
    for (int e = 1; e <= max_exp[v]; ++e) {
      for (int i = 0; i < order; ++i) {
        powers[v][e * order + i] = powers[v][(e - 1) * order + i] * rules[v]->nodes[i];
      }
    }
  }

  std::array<int, kMaxVars> idx{};
  std::array<const double*, kMaxVars> point{};
  double sum = 0.0;
  double comp = 0.0;
  while (true) {
    double w = 1.0;
    for (int v = 0; v < s.dim; ++v) {
      w *= rules[v]->weights[idx[v]];
      point[v] = powers[v].data() + idx[v];
    }
    neumaier_add(sum, comp, w * evaluate_factors(factors, point, stride));
    int v = 0;
    while (v < s.dim && ++idx[v] == order) idx[v++] = 0;
    if (v == s.dim) break;
  }
  return s.coeff * (sum + comp);
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

double integrate_sector_halton(const Sector& s, std::size_t samples) {
  static constexpr std::array<unsigned, kMaxVars> primes{2, 3, 5, 7, 11, 13, 17, 19};
  std::array<int, kMaxVars> max_exp{};
  const std::vector<FlatFactor> factors = flatten(s, max_exp);
  std::array<int, kMaxVars> stride{};
  std::array<std::vector<double>, kMaxVars> powers;
  std::array<const double*, kMaxVars> point{};
  double jac = 1.0;
  for (int v = 0; v < s.dim; ++v) {
    jac /= s.mono[v] + 1.0;
    powers[v].resize(max_exp[v] + 1);
    stride[v] = 1;
  }
  if (s.dim == 0) return s.coeff * evaluate_factors(factors, point, stride);
  double sum = 0.0;
  double comp = 0.0;
  // x = y^{1/(1+e)} turns the weight x^e into the uniform measure.
  for (std::size_t n = 1; n <= samples; ++n) {
    for (int v = 0; v < s.dim; ++v) {
      const double y = radical_inverse(n, primes[v]);
      const double x = std::pow(y, 1.0 / (s.mono[v] + 1.0));
      powers[v][0] = 1.0;
      for (int e = 1; e <= max_exp[v]; ++e) powers[v][e] = powers[v][e - 1] * x;
      point[v] = powers[v].data();
    }
    neumaier_add(sum, comp, evaluate_factors(factors, point, stride));
  }
  return s.coeff * jac * (sum + comp) / static_cast<double>(samples);
}

}  // namespace

struct SimplexKernelIntegral::Impl {
  double prefactor = 0.0;
  std::vector<Sector> sectors;
  mutable RuleCache cache;
};

SimplexKernelIntegral::SimplexKernelIntegral(const SimplexKernelProblem& problem)
    : impl_(std::make_unique<Impl>()) {
  const int n = problem.points;
  const double alpha = problem.exponent;
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("simplex kernel: need an even point count");
  if (static_cast<int>(problem.runs.size()) != n + 1) {
    throw std::invalid_argument("simplex kernel: runs must have points + 1 entries");
  }
  if (static_cast<int>(problem.pairs.size()) * 2 != n) {
    throw std::invalid_argument("simplex kernel: pairs must cover every point once");
  }
  if (!(alpha > -1.0)) throw std::invalid_argument("simplex kernel: exponent must exceed -1");
  if (!(problem.horizon > 0.0)) throw std::invalid_argument("simplex kernel: horizon must be positive");
  if (n - 1 > kMaxVars + 1) throw std::invalid_argument("simplex kernel: too many points");
  for (int r : problem.runs) {
    if (r < 0) throw std::invalid_argument("simplex kernel: negative run");
  }

  auto log_factorial = [](int r) { return std::lgamma(r + 1.0); };
  const double T = problem.horizon;

  if (n == 0) {
    const int r = problem.runs[0];
    impl_->prefactor = std::exp(r * std::log(T) - log_factorial(r));
    Sector s;
    impl_->sectors.push_back(s);
    return;
  }

  std::vector<int> seen(n, 0);
  for (auto [a, b] : problem.pairs) {
    if (a < 0 || b >= n || a >= b) throw std::invalid_argument("simplex kernel: bad pair");
    ++seen[a];
    ++seen[b];
  }
  for (int c : seen) {
    if (c != 1) throw std::invalid_argument("simplex kernel: pairs must cover every point once");
  }

  // Gap j joins kernel points j and j+1; there are M interior gaps.
  const int M = n - 1;
  const int k = n / 2;
  int interior_runs = 0;
  double log_interior_fact = 0.0;
  for (int j = 1; j < n; ++j) {
    interior_runs += problem.runs[j];
    log_interior_fact += log_factorial(problem.runs[j]);
  }
  const double degree = k * alpha + interior_runs;  // homogeneity of the gap integrand
  const int r0 = problem.runs.front();
  const int rn = problem.runs.back();
  const double total = r0 + rn + degree + M + 1.0;
  impl_->prefactor = std::exp(total * std::log(T) + std::lgamma(degree + M) -
                              std::lgamma(total + 1.0) - log_interior_fact);

  if (M == 1) {
    impl_->sectors.push_back(Sector{});
    return;
  }

  // Primary sector l: gap l is the largest, the others are x_i * gap_l.
  std::vector<Sector> roots;
  for (int l = 0; l < M; ++l) {
    auto var = [l](int gap) { return gap < l ? gap : gap - 1; };
    Sector s;
    s.dim = M - 1;
    for (int g = 0; g < M; ++g) {
      if (g != l) s.mono[var(g)] = problem.runs[g + 1];
    }
    for (auto [a, b] : problem.pairs) {
      Factor f{{}, alpha};
      if (a <= l && l < b) f.terms.push_back(Term{1.0, {}});
      for (int g = a; g < b; ++g) {
        if (g == l) continue;
        Term t{1.0, {}};
        t.exps[var(g)] = 1;
        f.terms.push_back(t);
      }
      s.factors.push_back(std::move(f));
    }
    Factor total_length{{Term{1.0, {}}}, -(M + degree)};
    for (int g = 0; g < M; ++g) {
      if (g == l) continue;
      Term t{1.0, {}};
      t.exps[var(g)] = 1;
      total_length.terms.push_back(t);
    }
    s.factors.push_back(std::move(total_length));
    roots.push_back(std::move(s));
  }
  impl_->sectors = decompose(std::move(roots));
}

SimplexKernelIntegral::~SimplexKernelIntegral() = default;
SimplexKernelIntegral::SimplexKernelIntegral(SimplexKernelIntegral&&) noexcept = default;
SimplexKernelIntegral& SimplexKernelIntegral::operator=(SimplexKernelIntegral&&) noexcept = default;

double SimplexKernelIntegral::gauss(int order) const {
  if (order < 1) throw std::invalid_argument("gauss: order must be positive");
  double sum = 0.0;
  double comp = 0.0;
  for (const Sector& s : impl_->sectors) {
    neumaier_add(sum, comp, integrate_sector_gauss(s, order, impl_->cache));
  }
  return impl_->prefactor * (sum + comp);
}

double SimplexKernelIntegral::quasi_random(std::size_t samples) const {
  if (samples < 1) throw std::invalid_argument("quasi_random: need at least one sample");
  double sum = 0.0;
  double comp = 0.0;
  for (const Sector& s : impl_->sectors) {
    neumaier_add(sum, comp, integrate_sector_halton(s, samples));
  }
  return impl_->prefactor * (sum + comp);
}

std::size_t SimplexKernelIntegral::sector_count() const { return impl_->sectors.size(); }

int SimplexKernelIntegral::max_dimension() const {
  int d = 0;
  for (const Sector& s : impl_->sectors) d = std::max(d, s.dim);
  return d;
}

}  // namespace fbmsig
