#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "hermiso/filter.hpp"
#include "hermiso/geometry.hpp"
#include "hermiso/moments.hpp"
#include "hermiso/multi_index.hpp"

namespace hermiso {

/// Scale parameter and filter for the isolation operator
///   T_n(m; x) = n^{-q} sum_{|j|_1 < n^2} H(sqrt(|j|_1)/n) m(j) psi_j(x).
struct PioConfig {
  int n = 1;
  int q = 1;
  FilterSpec filter;
  bool compensated_sum = false;  // Kahan accumulation instead of plain serial

  void validate() const;
};

/// Precomputed index set, filter weights and scale for one (n, q, filter)
/// combination. Every evaluation path (pointwise, kernel, grid) walks the
/// same flattened index list in graded-lex order with the same term
/// association, so results agree bit-for-bit across paths.
class PioPlan {
 public:
  explicit PioPlan(const PioConfig& cfg);

  const PioConfig& config() const { return cfg_; }
  Eigen::Index term_count() const { return weights_.size(); }
  int degree_bound() const { return cfg_.n * cfg_.n; }
  const Eigen::VectorXd& term_weights() const { return weights_; }

  /// degrees of term r, axis a
  int degree(Eigen::Index r, int a) const { return degrees_[static_cast<std::size_t>(r) * cfg_.q + a]; }

  std::complex<double> accumulate(const std::vector<const double*>& axis_tables,
                                  const Eigen::VectorXcd& values) const;
  double accumulate_kernel(const std::vector<const double*>& x_tables,
                           const std::vector<const double*>& y_tables) const;

 private:
  PioConfig cfg_;
  std::vector<int> degrees_;   // term-major, q entries per term
  Eigen::VectorXd weights_;    // H(sqrt(|j|_1)/n) per term
  double scale_ = 1.0;         // n^{-q}
};

std::complex<double> pio_eval(const PioConfig& cfg, const MomentSet& m, const Point& x);

/// Kernel Phi_n(x, y) = n^{-q} sum H(sqrt(|j|_1)/n) psi_j(x) psi_j(y).
double kernel_eval(const PioConfig& cfg, const Point& x, const Point& y);

/// Phi_n(x, x) >= 0: the same sum with squared basis products.
double kernel_diag(const PioConfig& cfg, const Point& x);

struct GridEvaluation {
  Lattice lattice;
  Eigen::VectorXcd values;
  double max_abs = 0.0;
  Eigen::Index argmax = 0;

  /// sup over grid coordinates of |psi_d| per axis, folded through the filter
  /// weights: together with a moment perturbation magnitude this yields a
  /// worst-case bound on the induced |E_n| over the grid.
  double noise_amplification = 0.0;
};

inline constexpr Eigen::Index kDefaultGridNodeCap = 10'000'000;

GridEvaluation pio_eval_grid(const PioConfig& cfg, const MomentSet& m, const Lattice& lattice,
                             int workers = 1, Eigen::Index node_cap = kDefaultGridNodeCap);
GridEvaluation pio_eval_grid(const PioConfig& cfg, const MomentSet& m, const Box& box,
                             double spacing, int workers = 1,
                             Eigen::Index node_cap = kDefaultGridNodeCap);

}  // namespace hermiso
