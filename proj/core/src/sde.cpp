#include "fbmsig/sde.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fbmsig/fbm_sampler.hpp"
#include "fbmsig/parallel.hpp"

namespace fbmsig {

void VectorFieldSet::validate() const {
  if (dimension < 1) throw std::invalid_argument("vector fields: dimension must be positive");
  if (fields.empty()) throw std::invalid_argument("vector fields: need at least V_0");
  for (const auto& v : fields) {
    if (!v) throw std::invalid_argument("vector fields: empty callable");
  }
}

State ode_along_path(const VectorFieldSet& vf, const State& x0, const PiecewiseLinearPath& path,
                     int steps) {
  vf.validate();
  if (steps < 1) throw std::invalid_argument("ode_along_path: steps must be positive");
  if (path.width() != static_cast<int>(vf.fields.size())) {
    throw std::invalid_argument("ode_along_path: path width does not match the vector fields");
  }
  if (x0.size() != vf.dimension) throw std::invalid_argument("ode_along_path: bad initial state");

  State y = x0;
  const double h = 1.0 / steps;
  for (std::size_t seg = 0; seg < path.num_segments(); ++seg) {
    const std::vector<double> inc = path.increment(seg);
    // dy/ds = sum_i inc_i V_i(y) for s in [0,1]
    auto rhs = [&](const State& x) {
      State out = State::Zero(vf.dimension);
      for (std::size_t i = 0; i < inc.size(); ++i) {
        if (inc[i] != 0.0) out += inc[i] * vf.fields[i](x);
      }
      return out;
    };
    for (int s = 0; s < steps; ++s) {
      const State k1 = rhs(y);
      const State k2 = rhs(y + 0.5 * h * k1);
      const State k3 = rhs(y + 0.5 * h * k2);
      const State k4 = rhs(y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!y.allFinite()) {
      std::ostringstream msg;
      msg << "ode_along_path: non-finite state after piece " << seg << " (t = "
          << path.times()[seg + 1] << "): " << y.transpose();
      throw std::runtime_error(msg.str());
    }
  }
  return y;
}

double cubature_weak_value(const VectorFieldSet& vf, const Observable& f, const State& x0,
                           const CubatureFormula& formula, double T, double hurst,
                           int steps_per_piece) {
  const CubatureFormula scaled = rescale_formula(formula, T, hurst);
  scaled.validate();
  std::vector<double> terms;
  for (std::size_t j = 0; j < scaled.paths.size(); ++j) {
    terms.push_back(scaled.weights[j] * f(ode_along_path(vf, x0, scaled.paths[j], steps_per_piece)));
  }
  return compensated_sum(terms);
}

McEstimate mc_weak_value(const VectorFieldSet& vf, const Observable& f, const State& x0,
                         double hurst, double T, std::size_t n_paths, int n_steps,
                         std::uint64_t seed, int steps_per_piece, int threads) {
  if (!(hurst > 0.5 && hurst < 1.0)) {
    throw std::invalid_argument("mc_weak_value requires 1/2 < H < 1");
  }
  if (!(T > 0.0)) throw std::invalid_argument("mc_weak_value: T must be positive");
  if (n_paths < 1) throw std::invalid_argument("mc_weak_value: need at least one path");
  vf.validate();
  const FbmSampler sampler(hurst, n_steps, vf.driver_dim());
  std::vector<double> values(n_paths);
  parallel_for(
      n_paths,
      [&](std::size_t p) {
        const PiecewiseLinearPath path = sampler.sample_path(seed, p, T);
        values[p] = f(ode_along_path(vf, x0, path, steps_per_piece));
      },
      threads);

  McEstimate est;
  est.paths = n_paths;
  est.mean = compensated_sum(values) / static_cast<double>(n_paths);
  if (n_paths > 1) {
    std::vector<double> sq(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) sq[p] = (values[p] - est.mean) * (values[p] - est.mean);
    const double var = compensated_sum(sq) / static_cast<double>(n_paths - 1);
    est.std_error = std::sqrt(var / static_cast<double>(n_paths));
  }
  return est;
}

double ErrorBoundParams::K() const {
  return std::sqrt(2.0 / (hurst * (2.0 * hurst - 1.0)));
}

void ErrorBoundParams::validate() const {
  if (!(M > 0.0)) throw std::invalid_argument("error bound: M must be positive");
  if (!(gamma >= 0.0 && gamma < 0.5)) throw std::invalid_argument("error bound: need 0 <= gamma < 1/2");
  if (d < 1) throw std::invalid_argument("error bound: d must be positive");
  if (degree < 1) throw std::invalid_argument("error bound: degree must be positive");
  if (!(hurst > 0.5 && hurst < 1.0)) throw std::invalid_argument("error bound: need 1/2 < H < 1");
}

namespace {

// Beyond this many terms before the peak the series is summed by Laplace's
// method; the absolute error in log S is then below 1e-6.
constexpr double kLaplaceThreshold = 1e7;

}  // namespace

double log_factorial_series(double z, double gamma) {
  if (!(gamma >= 0.0 && gamma < 0.5)) throw std::invalid_argument("series: need 0 <= gamma < 1/2");
  if (!(z >= 0.0)) throw std::invalid_argument("series: argument must be non-negative");
  if (z == 0.0) return 0.0;
  const double p = 0.5 - gamma;
  const double log_z = std::log(z);
  auto log_term = [&](double k) { return k * log_z - p * std::lgamma(k + 1.0); };
  // Terms are log-concave in k and increase while (k+1)^p <= z, so the
  // largest one sits at k = floor(z^{1/p}) - 1 (or 0). Sum outwards from it.
  const double peak = std::max(0.0, std::floor(std::exp(log_z / p)) - 1.0);
  const double log_max = log_term(peak);
  if (peak > kLaplaceThreshold) {
    // Laplace approximation; the log-curvature at the peak is -p / (k+1)
    return log_max + 0.5 * std::log(2.0 * M_PI * (peak + 1.0) / p);
  }
  const double cutoff = std::log(1e-17);
  double sum = 1.0;
  for (double k = peak - 1.0; k >= 0.0; k -= 1.0) {
    const double r = log_term(k) - log_max;
    if (r < cutoff) break;
    sum += std::exp(r);
  }
  for (double k = peak + 1.0;; k += 1.0) {
    const double r = log_term(k) - log_max;
    sum += std::exp(r);
    // beyond the peak the term ratio z / (k+1)^p is below 1 and decreasing,
    // so the remaining tail is at most next / (1 - ratio)
    const double ratio = z / std::pow(k + 1.0, p);
    if (ratio < 1.0 && std::exp(r) * ratio / (1.0 - ratio) < 1e-12 * sum) break;
  }
  return log_max + std::log(sum);
}

BoundShape error_bound_shape(const ErrorBoundParams& params, double T) {
  params.validate();
  if (!(T > 0.0)) throw std::invalid_argument("error bound: T must be positive");
  const double half = (params.degree + 2.0) / 2.0;
  const double log_M = std::log(params.M);
  BoundShape out;
  if (T >= 1.0) {
    out.branch = BoundBranch::LongTime;
    const double log_s = log_factorial_series(params.d * params.M * params.K() * T, params.gamma);
    const double inner = half * log_M + log_s;  // log of the bracketed series term
    out.log_value = half * std::log(T) + (inner > 0 ? inner + std::log1p(std::exp(-inner))
                                                    : std::log1p(std::exp(inner)));
  } else {
    out.branch = BoundBranch::ShortTime;
    const double th = std::pow(T, params.hurst);
    const double log_a = 2.0 * params.hurst * std::log(T);
    const double log_b = params.hurst * half * std::log(T) + half * log_M +
                         log_factorial_series(params.d * params.M * params.K() * th, params.gamma);
    const double hi = std::max(log_a, log_b);
    out.log_value = hi + std::log1p(std::exp(std::min(log_a, log_b) - hi));
  }
  out.value = std::exp(out.log_value);
  return out;
}

}  // namespace fbmsig
