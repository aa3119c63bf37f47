#pragma once

#include <vector>

namespace fbmsig {

/// Nodes and weights of a one-dimensional quadrature rule on [0,1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss rule on [0,1] for the weight x^beta (beta > -1), from the
/// Golub-Welsch eigenproblem of the shifted Jacobi recurrence. Exact for
/// integrands x^beta p(x) with deg p <= 2n-1.
QuadratureRule gauss_jacobi_unit(int n, double beta);

/// n-point Gauss-Legendre rule on [0,1].
QuadratureRule gauss_legendre_unit(int n);

}  // namespace fbmsig
