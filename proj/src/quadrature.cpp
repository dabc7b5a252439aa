#include "hermiso/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace hermiso {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)^2.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag, double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("quadrature eigensolve failed");
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  return golub_welsch(diag, sub, std::sqrt(M_PI));
}

Eigen::VectorXd gauss_hermite_plain_weights(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_plain_weights: n must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("quadrature eigensolve failed");

  // w_i e^{x_i^2} = sqrt(pi) exp(2 log|v0_i| + x_i^2); the log form keeps the
  // e^{-x^2}-sized eigenvector components from underflowing first.
  const double log_mu0 = 0.5 * std::log(M_PI);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    const double x = solver.eigenvalues()[i];
    w[i] = std::exp(log_mu0 + 2.0 * std::log(std::abs(v0)) + x * x);
  }
  return w;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(diag, sub, 2.0);
}

QuadratureRule composite_legendre(const Eigen::VectorXd& breaks, int nodes_per_cell) {
  if (breaks.size() < 2) throw std::invalid_argument("composite_legendre: need at least one cell");
  const QuadratureRule base = gauss_legendre(nodes_per_cell);
  const Eigen::Index cells = breaks.size() - 1;
  QuadratureRule rule;
  rule.nodes.resize(cells * nodes_per_cell);
  rule.weights.resize(cells * nodes_per_cell);
  for (Eigen::Index c = 0; c < cells; ++c) {
    const double a = breaks[c], b = breaks[c + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < nodes_per_cell; ++i) {
      rule.nodes[c * nodes_per_cell + i] = mid + half * base.nodes[i];
      rule.weights[c * nodes_per_cell + i] = half * base.weights[i];
    }
  }
  return rule;
}

QuadratureRule composite_legendre(double a, double b, int cells, int nodes_per_cell) {
  if (cells < 1) throw std::invalid_argument("composite_legendre: need at least one cell");
  Eigen::VectorXd breaks(cells + 1);
  for (int i = 0; i <= cells; ++i) breaks[i] = a + (b - a) * (static_cast<double>(i) / cells);
  return composite_legendre(breaks, nodes_per_cell);
}

}  // namespace hermiso
