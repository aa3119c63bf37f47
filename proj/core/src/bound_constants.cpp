#include "fbmsig/bound_constants.hpp"

#include <cmath>
#include <stdexcept>

namespace fbmsig {

namespace {

void check_hurst(double hurst) {
  if (!(hurst > 0.5 && hurst < 1.0)) {
    throw std::invalid_argument("Hurst parameter must satisfy 1/2 < H < 1");
  }
}

}  // namespace

CertifiedValue hurst_series_sum(double hurst, double tol) {
  check_hurst(hurst);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double e = 2.0 * hurst - 3.0;  // in (-2, -1)
  auto f = [e](double x) { return std::pow(x, e); };
  auto tail_integral = [e](double from) { return std::pow(from, e + 1.0) / -(e + 1.0); };

  double partial = 0.0;
  double comp = 0.0;
  long n = 0;
  long target = 64;
  while (true) {
    for (; n < target; ++n) {
      const double x = f(static_cast<double>(n + 1));
      const double t = partial + x;
      comp += std::abs(partial) >= x ? (partial - t) + x : (x - t) + partial;
      partial = t;
    }
    const double head = partial + comp;
    const double N = static_cast<double>(n);
    const double lo = head + tail_integral(N + 1.0) + 0.5 * f(N + 1.0);
    const double hi = head + tail_integral(N + 0.5);
    if (hi - lo < tol || n > (1L << 34)) {
      return CertifiedValue{0.5 * (lo + hi), lo, hi, n};
    }
    target *= 2;
  }
}

CertifiedValue constant_A(double hurst, double tol) {
  const CertifiedValue s = hurst_series_sum(hurst, tol / 16.0);
  const double h = hurst;
  const double c = h * (2.0 * h - 1.0);
  const double p2 = std::pow(2.0, 2.0 * h);
  const double p3 = std::pow(3.0, 2.0 * h);
  auto A = [&](double series) {
    return 2.0 * (1.0 / c + (p2 + 2.0) / c + (4.0 - 4.0 * h) * series) +
           (p3 + 10.0 * p2 + 2.0) / (2.0 * c);
  };
  return CertifiedValue{A(s.value), A(s.lower), A(s.upper), s.terms};
}

CertifiedValue constant_Atilde(double hurst, double tol) {
  const CertifiedValue s = hurst_series_sum(hurst, tol / 16.0);
  const double h = hurst;
  const double c = h * (2.0 * h - 1.0);
  const double p2 = std::pow(2.0, 2.0 * h);
  const double p3 = std::pow(3.0, 2.0 * h);
  auto At = [&](double series) {
    return 56.0 * (1.0 + p2) + 4.0 * p3 + 16.0 * c * (4.0 - 4.0 * h) * series;
  };
  return CertifiedValue{At(s.value), At(s.lower), At(s.upper), s.terms};
}

double convergence_coefficient_bound(double hurst, int k) {
  if (k < 1) throw std::invalid_argument("level index k must be at least 1");
  const double at = constant_Atilde(hurst).upper;
  return at * k * (2.0 * k - 1.0) / (std::tgamma(static_cast<double>(k)) * std::ldexp(1.0, k));
}

}  // namespace fbmsig
