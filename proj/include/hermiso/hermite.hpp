#pragma once

#include <Eigen/Core>

#include "hermiso/geometry.hpp"
#include "hermiso/multi_index.hpp"

namespace hermiso {

/// Orthonormal Hermite functions psi_0..psi_max_degree at x, computed by the
/// forward three-term recurrence on the weighted functions themselves:
///
///   psi_0(x) = pi^{-1/4} exp(-x^2/2)
///   psi_1(x) = sqrt(2) pi^{-1/4} x exp(-x^2/2)
///   psi_j(x) = x sqrt(2/j) psi_{j-1}(x) - sqrt((j-1)/j) psi_{j-2}(x)
///
/// The weighted functions are uniformly bounded, so the recurrence is stable
/// in double precision for every degree this library ever requests.
Eigen::VectorXd hermite_table(double x, int max_degree);

/// One table per coordinate: row i holds psi_0..psi_max_degree at coords[i].
Eigen::MatrixXd hermite_table(const Eigen::VectorXd& coords, int max_degree);

/// Tensor-product Hermite function: prod_a psi_{k_a}(x_a).
double hermite_product(const Point& x, const MultiIndex& k);

/// Reproducing-kernel sum K_n(x,y) = sum_{j<n} psi_j(x) psi_j(y).
/// Away from the diagonal this uses the Christoffel-Darboux quotient
/// sqrt(n/2) (psi_n(x) psi_{n-1}(y) - psi_n(y) psi_{n-1}(x)) / (x - y);
/// within |x-y| <= 1e-6 it falls back to direct summation, which needs no
/// derivative values and avoids the cancelling quotient.
double christoffel_darboux(double x, double y, int n);

/// Closed form of sum_j psi_j(y) psi_j(z) r^{|j|_1} for |r| < 1:
///   (pi (1-r^2))^{-q/2} exp((2 y.z r - (|y|^2+|z|^2) r^2)/(1-r^2))
///                       exp(-(|y|^2+|z|^2)/2)
double mehler_closed_form(const Point& y, const Point& z, double r);

}  // namespace hermiso
