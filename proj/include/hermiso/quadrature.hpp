#pragma once

#include <Eigen/Core>

namespace hermiso {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Hermite rule for the weight exp(-x^2) on R (Golub-Welsch via a
/// symmetric tridiagonal eigenproblem).
QuadratureRule gauss_hermite(int n);

/// Weights for integrating plain functions of the weighted Hermite basis:
/// w_i * exp(x_i^2), evaluated in log space so nothing underflows.
Eigen::VectorXd gauss_hermite_plain_weights(int n);

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule: `nodes_per_cell` Legendre nodes mapped into
/// each interval [breaks[i], breaks[i+1]].
QuadratureRule composite_legendre(const Eigen::VectorXd& breaks, int nodes_per_cell);

/// Equal-width cells on [a, b].
QuadratureRule composite_legendre(double a, double b, int cells, int nodes_per_cell);

}  // namespace hermiso
