#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace fbmsig {

/// Integral over the ordered simplex 0 < s_1 < ... < s_N < horizon of
///
///   prod_{(a,b) in pairs} (t_b - t_a)^exponent
///
/// where t_0 < ... < t_{n-1} are the kernel-carrying points among the s_i and
/// the remaining N - n variables are free time variables. `runs[j]` counts the
/// free variables sitting between kernel points j-1 and j (runs[0] before the
/// first, runs[n] after the last).
struct SimplexKernelProblem {
  int points = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> runs;
  double exponent = 0.0;
  double horizon = 1.0;
};

/// Exact reduction of a SimplexKernelProblem to smooth integrals over unit
/// cubes, followed by product quadrature.
///
/// Free time variables are integrated in closed form, the integrand is
/// written in gap coordinates and its homogeneity pulls out a Beta-type
/// factor. The remaining simplex integral is split into primary sectors and
/// then iterated sector decomposition isolates every endpoint singularity as
/// a monomial weight x^e, which is integrated exactly by Gauss-Jacobi rules.
class SimplexKernelIntegral {
 public:
  explicit SimplexKernelIntegral(const SimplexKernelProblem& problem);
  ~SimplexKernelIntegral();
  SimplexKernelIntegral(SimplexKernelIntegral&&) noexcept;
  SimplexKernelIntegral& operator=(SimplexKernelIntegral&&) noexcept;

  /// Gauss-Jacobi product rule with `order` nodes per axis in every sector.
  double gauss(int order) const;
  /// Halton quasi-Monte Carlo with `samples` points per sector.
  double quasi_random(std::size_t samples) const;

  std::size_t sector_count() const;
  /// Largest cube dimension over all sectors.
  int max_dimension() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fbmsig
