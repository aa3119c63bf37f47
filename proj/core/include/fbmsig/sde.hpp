#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fbmsig/cubature.hpp"
#include "fbmsig/tensor_algebra.hpp"

namespace fbmsig {

using State = Eigen::VectorXd;
using VectorField = std::function<State(const State&)>;
using Observable = std::function<double(const State&)>;

/// Vector fields V_0 (time direction), V_1..V_d on R^N.
struct VectorFieldSet {
  int dimension = 1;
  std::vector<VectorField> fields;

  int driver_dim() const { return static_cast<int>(fields.size()) - 1; }
  void validate() const;
};

/// Solves dy = sum_i V_i(y) dw^i along a time-augmented piecewise-linear
/// path with classical RK4, `steps` steps per linear piece. Throws
/// std::runtime_error if the state becomes non-finite.
State ode_along_path(const VectorFieldSet& vf, const State& x0, const PiecewiseLinearPath& path,
                     int steps);

/// sum_j lambda_j f(y_T(omega_j)) along the formula rescaled to [0, T].
double cubature_weak_value(const VectorFieldSet& vf, const Observable& f, const State& x0,
                           const CubatureFormula& formula, double T, double hurst,
                           int steps_per_piece = 64);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t paths = 0;
};

/// Monte-Carlo E f(y_T) with y driven by the piecewise-linear interpolation
/// of fBm sampled on `n_steps` uniform cells of [0, T]. Path p uses random
/// stream p of `seed`, and the average is summed in path order, so the
/// result does not depend on the thread count.
McEstimate mc_weak_value(const VectorFieldSet& vf, const Observable& f, const State& x0,
                         double hurst, double T, std::size_t n_paths, int n_steps,
                         std::uint64_t seed, int steps_per_piece = 4, int threads = 0);

struct ErrorBoundParams {
  double M = 1.0;      ///< bound on |V_I f| growth
  double gamma = 0.0;  ///< factorial growth exponent, in [0, 1/2)
  int d = 1;
  int degree = 5;
  double hurst = 0.75;

  /// sqrt(2 / (H (2H-1)))
  double K() const;
  void validate() const;
};

enum class BoundBranch { LongTime, ShortTime };

struct BoundShape {
  double value = 0.0;
  double log_value = 0.0;  ///< natural log, finite even when value overflows
  BoundBranch branch = BoundBranch::LongTime;
};

/// Weak-error bound of the cubature method with every unknown constant set
/// to 1. For T >= 1:
///   T^{(m+2)/2} (1 + M^{(m+2)/2} S(d M K T)),
/// for T < 1:
///   T^{2H} + T^{H(m+2)/2} M^{(m+2)/2} S(d M K T^H),
/// where S(z) = sum_{k>=0} z^k / (k!)^{1/2-gamma}.
BoundShape error_bound_shape(const ErrorBoundParams& params, double T);

/// log S(z) for the series above, summed outwards from its largest term
/// until the tail is below 1e-12 relative to the partial sum. When the
/// largest term sits beyond k = 1e7 Laplace's method is used instead.
double log_factorial_series(double z, double gamma);

}  // namespace fbmsig
