#include "fbmsig/gauss_rules.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace fbmsig {

QuadratureRule gauss_jacobi_unit(int n, double beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_unit: need n >= 1");
  if (!(beta > -1.0)) throw std::invalid_argument("gauss_jacobi_unit: need beta > -1");

  // Monic Jacobi recurrence on [-1,1] for (1-t)^a (1+t)^b with a = 0, b = beta,
  // then mapped to x = (1+t)/2.
  const double a = 0.0;
  const double b = beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    double alpha_t;
    if (k == 0) {
      alpha_t = (b - a) / (a + b + 2.0);
    } else {
      alpha_t = (b * b - a * a) / (s * (s + 2.0));
    }
    diag(k) = 0.5 * (1.0 + alpha_t);
    if (k + 1 < n) {
      const int m = k + 1;
      const double sm = 2.0 * m + a + b;
      const double beta_t =
          4.0 * m * (m + a) * (m + b) * (m + a + b) / (sm * sm * (sm + 1.0) * (sm - 1.0));
      sub(k) = 0.5 * std::sqrt(beta_t);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi_unit: eigen solver failed");
  }

  const double mass = 1.0 / (beta + 1.0);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mass * v0 * v0;
  }
  return rule;
}

QuadratureRule gauss_legendre_unit(int n) { return gauss_jacobi_unit(n, 0.0); }

}  // namespace fbmsig
