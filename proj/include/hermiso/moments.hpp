#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hermiso/geometry.hpp"
#include "hermiso/multi_index.hpp"

namespace hermiso {

using Complex = std::complex<double>;

struct PointMass {
  Point location;
  Complex amplitude;
};

/// Ground-truth scene: weighted point masses inside a box.
struct Scenario {
  int q = 1;
  std::vector<PointMass> masses;
  Box box;

  double total_amplitude() const;  // sum of |a_l|
  double min_amplitude() const;    // min |a_l|, 0 if empty
  double min_separation() const;   // min pairwise distance, +inf if fewer than 2
  double max_coord() const;        // max |x_l|_inf, 0 if empty
  void validate() const;
};

enum class Side { spatial, fourier };

const char* to_string(Side s);
Side side_from_string(const std::string& s);

/// Finite table of Hermite moments, dense over {k : |k|_1 < max_total_degree}
/// in graded-lex order.
///
/// Values are stored in the spatial normalization regardless of the tag; the
/// Fourier-side values (-i)^{|k|_1} (2pi)^{q/2} tau(k) are materialized on
/// access and at serialization. Flipping the side therefore never touches the
/// stored numbers, which keeps spatial/fourier round trips and downstream
/// detection bit-for-bit identical.
class MomentSet {
 public:
  MomentSet() = default;
  MomentSet(int q, Side side, int max_total_degree, Eigen::VectorXcd spatial_values,
            double max_perturbation = 0.0);

  int q() const { return q_; }
  Side side() const { return side_; }
  int max_total_degree() const { return max_total_degree_; }
  Eigen::Index size() const { return values_.size(); }
  double max_perturbation() const { return max_perturbation_; }

  /// Stored values in spatial normalization, graded-lex order.
  const Eigen::VectorXcd& spatial_values() const { return values_; }

  /// Value as seen on the tagged side.
  Complex value(const MultiIndex& k) const;
  Complex value_at_rank(Eigen::Index rank, int total_degree) const;

  /// (-i)^{total} (2pi)^{q/2}, the spatial -> fourier factor.
  Complex side_factor(int total_degree) const;

  void validate() const;

 private:
  int q_ = 0;
  Side side_ = Side::spatial;
  int max_total_degree_ = 0;
  Eigen::VectorXcd values_;
  double max_perturbation_ = 0.0;
};

/// Exact moments of a scenario: value(k) = sum_l a_l psi_k(x_l) for every
/// |k|_1 < n^2. Masses are accumulated in a canonical order (sorted by
/// location, then amplitude) so the result is independent of list order.
MomentSet moments_from_masses(const Scenario& scenario, int n);

/// Flip the side tag. Observable values pick up (or drop) the factor
/// (-i)^{|k|_1} (2pi)^{q/2}; converting twice is the identity, exactly.
MomentSet convert_side(const MomentSet& m);

struct PerturbationSpec {
  enum class Kind { none, uniform_disk, fixed_table };
  Kind kind = Kind::none;
  double magnitude = 0.0;  // eps_max for uniform_disk
  std::uint64_t seed = 0;
  std::vector<std::pair<MultiIndex, Complex>> table;  // fixed_table entries
};

/// Adds eps_k to every stored value as seen on the tagged side. The returned
/// set records max_k |eps_k| for diagnostics. uniform_disk draws i.i.d.
/// uniformly from the complex disk of radius `magnitude` with a fixed
/// mt19937_64-based mapping, so results are identical across platforms.
MomentSet perturb(const MomentSet& m, const PerturbationSpec& spec);

/// Density raster on a box: per-axis uniform nodes (shape[a] >= 2), values in
/// row-major order with the last axis fastest.
struct DensityGrid {
  Box box;
  Eigen::VectorXi shape;
  Eigen::VectorXd values;

  int q() const { return box.dim(); }
  double spacing(int axis) const;
  void validate() const;
};

/// Moments of the multilinear interpolant of a sampled density, integrated by
/// per-cell tensor Gauss-Legendre quadrature. The per-cell order is grown
/// until the rule integrates psi_{n^2-1}^2 over the box to < 1e-8 (checked by
/// comparing against a higher-order rule); if no admissible order exists the
/// grid is too coarse for the requested n and a DataError is raised.
MomentSet moments_from_density(const DensityGrid& density, int n);

}  // namespace hermiso
