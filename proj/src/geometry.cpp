#include "hermiso/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "hermiso/errors.hpp"

namespace hermiso {

bool Box::contains(const Point& x, double slack) const {
  if (x.size() != lo.size()) return false;
  return (x.array() >= lo.array() - slack).all() && (x.array() <= hi.array() + slack).all();
}

void Box::validate() const {
  if (lo.size() != hi.size() || lo.size() < 1) throw DataError("box bounds have mismatched dimensions");
  if (!lo.allFinite() || !hi.allFinite()) throw DataError("box bounds must be finite");
  if ((lo.array() > hi.array()).any()) throw DataError("box requires lo <= hi per axis");
}

Lattice Lattice::covering(const Box& box, double spacing) {
  box.validate();
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("lattice spacing must be positive");
  Lattice g;
  g.spacing_ = spacing;
  g.size_ = 1;
  g.axes_.resize(box.dim());
  for (int a = 0; a < box.dim(); ++a) {
    const double span = box.hi[a] - box.lo[a];
    const auto count = static_cast<Eigen::Index>(std::floor(span / spacing * (1.0 + 1e-12))) + 1;
    Eigen::VectorXd coords(count);
    for (Eigen::Index i = 0; i < count; ++i) coords[i] = box.lo[a] + static_cast<double>(i) * spacing;
    g.axes_[a] = std::move(coords);
    g.size_ *= count;
  }
  return g;
}

Lattice Lattice::anchored(const Point& anchor, double spacing, const Eigen::VectorXi& counts) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("lattice spacing must be positive");
  if (anchor.size() != counts.size()) throw std::invalid_argument("anchor/count dimension mismatch");
  if ((counts.array() < 1).any()) throw std::invalid_argument("lattice needs at least one node per axis");
  Lattice g;
  g.spacing_ = spacing;
  g.size_ = 1;
  g.axes_.resize(anchor.size());
  for (int a = 0; a < anchor.size(); ++a) {
    Eigen::VectorXd coords(counts[a]);
    for (Eigen::Index i = 0; i < counts[a]; ++i) coords[i] = anchor[a] + static_cast<double>(i) * spacing;
    g.axes_[a] = std::move(coords);
    g.size_ *= counts[a];
  }
  return g;
}

Eigen::VectorXi Lattice::unflatten(Eigen::Index flat) const {
  Eigen::VectorXi idx(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    const Eigen::Index n = axes_[a].size();
    idx[a] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

Eigen::Index Lattice::flatten(const Eigen::VectorXi& idx) const {
  Eigen::Index flat = 0;
  for (int a = 0; a < dim(); ++a) flat = flat * axes_[a].size() + idx[a];
  return flat;
}

Point Lattice::node(Eigen::Index flat) const {
  const Eigen::VectorXi idx = unflatten(flat);
  Point x(dim());
  for (int a = 0; a < dim(); ++a) x[a] = axes_[a][idx[a]];
  return x;
}

}  // namespace hermiso
