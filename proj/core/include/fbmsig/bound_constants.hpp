#pragma once

namespace fbmsig {

/// A value together with a guaranteed enclosing interval.
struct CertifiedValue {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  long terms = 0;  ///< series terms summed before the tail bound
};

/// sum_{i>=1} i^{2H-3}. The tail beyond N is enclosed using convexity of
/// x^{2H-3}: int_{N+1}^inf f + f(N+1)/2 <= tail <= int_{N+1/2}^inf f.
/// N grows until the interval is narrower than `tol`.
CertifiedValue hurst_series_sum(double hurst, double tol = 1e-12);

/// Constant A of the per-pair error estimate for the piecewise-linear
/// approximation:
///   2 (1/(H(2H-1)) + (2^{2H}+2)/(H(2H-1)) + (4-4H) S)
///     + (3^{2H} + 10 2^{2H} + 2) / (2H(2H-1)),  S = hurst_series_sum.
CertifiedValue constant_A(double hurst, double tol = 1e-12);

/// 8 A H (2H-1), evaluated from its expanded form
///   56 (1 + 2^{2H}) + 4 3^{2H} + 16 H(2H-1)(4-4H) S.
CertifiedValue constant_Atilde(double hurst, double tol = 1e-12);

/// Bound Atilde k(2k-1) / ((k-1)! 2^k) on limsup m^{2H} |gap| at level 2k.
double convergence_coefficient_bound(double hurst, int k);

}  // namespace fbmsig
