#pragma once

#include <Eigen/Core>
#include <vector>

namespace hermiso {

using Point = Eigen::VectorXd;

/// Axis-aligned box, lo <= hi componentwise.
struct Box {
  Point lo;
  Point hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Point& x, double slack = 0.0) const;
  void validate() const;
};

/// Rectangular lattice over a box with uniform spacing. Axis coordinates are
/// generated as lo[a] + i * spacing so node positions are reproducible
/// bit-for-bit. Flat node order is lexicographic on the index tuple with the
/// last axis varying fastest.
class Lattice {
 public:
  /// Lattice covering `box`: per axis, nodes lo + i*spacing while they stay
  /// inside the box (with a tiny relative tolerance so an exact upper edge
  /// is included).
  static Lattice covering(const Box& box, double spacing);

  /// Lattice with explicit per-axis node counts anchored at `anchor`.
  static Lattice anchored(const Point& anchor, double spacing, const Eigen::VectorXi& counts);

  int dim() const { return static_cast<int>(axes_.size()); }
  double spacing() const { return spacing_; }
  Eigen::Index size() const { return size_; }
  const Eigen::VectorXd& axis(int a) const { return axes_[a]; }

  Eigen::VectorXi unflatten(Eigen::Index flat) const;
  Eigen::Index flatten(const Eigen::VectorXi& idx) const;
  Point node(Eigen::Index flat) const;

 private:
  std::vector<Eigen::VectorXd> axes_;
  double spacing_ = 0.0;
  Eigen::Index size_ = 0;
};

}  // namespace hermiso
