#include "hermiso/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hermiso/errors.hpp"
#include "hermiso/hermite.hpp"
#include "hermiso/quadrature.hpp"

namespace hermiso {

double Scenario::total_amplitude() const {
  double m = 0.0;
  for (const auto& pm : masses) m += std::abs(pm.amplitude);
  return m;
}

double Scenario::min_amplitude() const {
  double mu = masses.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& pm : masses) mu = std::min(mu, std::abs(pm.amplitude));
  return mu;
}

double Scenario::min_separation() const {
  double eta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < masses.size(); ++i) {
    for (std::size_t j = i + 1; j < masses.size(); ++j) {
      eta = std::min(eta, (masses[i].location - masses[j].location).norm());
    }
  }
  return eta;
}

double Scenario::max_coord() const {
  double b = 0.0;
  for (const auto& pm : masses) b = std::max(b, pm.location.lpNorm<Eigen::Infinity>());
  return b;
}

void Scenario::validate() const {
  if (q < 1) throw DataError("scenario dimension must be >= 1");
  box.validate();
  if (box.dim() != q) throw DataError("scenario box dimension does not match q");
  for (const auto& pm : masses) {
    if (pm.location.size() != q) throw DataError("mass location dimension does not match q");
    if (!pm.location.allFinite()) throw DataError("mass locations must be finite");
    if (!std::isfinite(pm.amplitude.real()) || !std::isfinite(pm.amplitude.imag())) {
      throw DataError("mass amplitudes must be finite");
    }
    if (std::abs(pm.amplitude) == 0.0) throw DataError("ground-truth masses need nonzero amplitude");
    if (!box.contains(pm.location)) throw DataError("mass location outside the scenario box");
  }
  if (masses.size() >= 2 && !(min_separation() > 0.0)) {
    throw DataError("scenario contains coincident mass locations");
  }
}

const char* to_string(Side s) { return s == Side::spatial ? "spatial" : "fourier"; }

Side side_from_string(const std::string& s) {
  if (s == "spatial") return Side::spatial;
  if (s == "fourier") return Side::fourier;
  throw DataError("unknown moment side: " + s);
}

MomentSet::MomentSet(int q, Side side, int max_total_degree, Eigen::VectorXcd spatial_values,
                     double max_perturbation)
    : q_(q),
      side_(side),
      max_total_degree_(max_total_degree),
      values_(std::move(spatial_values)),
      max_perturbation_(max_perturbation) {
  validate();
}

void MomentSet::validate() const {
  if (q_ < 1) throw DataError("moment set dimension must be >= 1");
  if (max_total_degree_ < 0) throw DataError("moment set degree bound must be >= 0");
  const auto expected = static_cast<Eigen::Index>(index_count(q_, max_total_degree_));
  if (values_.size() != expected) throw DataError("moment set value count does not match its degree bound");
  if (!values_.allFinite()) throw DataError("moment values must be finite");
}

Complex MomentSet::side_factor(int total_degree) const {
  static const Complex minus_i_pow[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  return minus_i_pow[total_degree % 4] * std::pow(2.0 * M_PI, 0.5 * q_);
}

Complex MomentSet::value_at_rank(Eigen::Index rank, int total_degree) const {
  const Complex v = values_[rank];
  return side_ == Side::spatial ? v : v * side_factor(total_degree);
}

Complex MomentSet::value(const MultiIndex& k) const {
  if (k.dim() != q_) throw DataError("moment lookup dimension mismatch");
  if (k.total >= max_total_degree_) throw DataError("moment lookup beyond the stored degree bound");
  return value_at_rank(graded_lex_rank(k), k.total);
}

MomentSet moments_from_masses(const Scenario& scenario, int n) {
  scenario.validate();
  if (n < 1) throw std::invalid_argument("moments_from_masses: n must be >= 1");
  const int q = scenario.q;
  const int bound = n * n;
  const auto indices = enumerate_indices(q, bound);

  // Canonical accumulation order: sort masses by location, then amplitude.
  std::vector<std::size_t> order(scenario.masses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = scenario.masses[i];
    const auto& b = scenario.masses[j];
    for (Eigen::Index d = 0; d < a.location.size(); ++d) {
      if (a.location[d] != b.location[d]) return a.location[d] < b.location[d];
    }
    if (a.amplitude.real() != b.amplitude.real()) return a.amplitude.real() < b.amplitude.real();
    return a.amplitude.imag() < b.amplitude.imag();
  });

  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t oi : order) {
    const auto& pm = scenario.masses[oi];
    std::vector<Eigen::VectorXd> tables(q);
    for (int a = 0; a < q; ++a) tables[a] = hermite_table(pm.location[a], bound - 1);
    for (std::size_t r = 0; r < indices.size(); ++r) {
      double p = 1.0;
      for (int a = 0; a < q; ++a) p *= tables[a][indices[r].degrees[a]];
      values[static_cast<Eigen::Index>(r)] += pm.amplitude * p;
    }
  }
  return MomentSet(q, Side::spatial, bound, std::move(values));
}

MomentSet convert_side(const MomentSet& m) {
  const Side flipped = m.side() == Side::spatial ? Side::fourier : Side::spatial;
  return MomentSet(m.q(), flipped, m.max_total_degree(), m.spatial_values(), m.max_perturbation());
}

namespace {

// Uniform double in [0, 1) from the top 53 bits of an mt19937_64 draw; the
// standard distributions are implementation-defined, this mapping is not.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

MomentSet perturb(const MomentSet& m, const PerturbationSpec& spec) {
  if (!std::isfinite(spec.magnitude) || spec.magnitude < 0.0) {
    throw std::invalid_argument("perturb: magnitude must be finite and >= 0");
  }
  Eigen::VectorXcd values = m.spatial_values();
  double max_eps = m.max_perturbation();

  switch (spec.kind) {
    case PerturbationSpec::Kind::none:
      return m;
    case PerturbationSpec::Kind::uniform_disk: {
      std::mt19937_64 rng(spec.seed);
      const auto indices = enumerate_indices(m.q(), m.max_total_degree());
      for (Eigen::Index r = 0; r < values.size(); ++r) {
        const double u1 = uniform01(rng);
        const double u2 = uniform01(rng);
        const double radius = spec.magnitude * std::sqrt(u1);
        const double angle = 2.0 * M_PI * u2;
        const Complex eps(radius * std::cos(angle), radius * std::sin(angle));
        // eps is observed on the tagged side; store its spatial equivalent.
        const Complex eps_spatial =
            m.side() == Side::spatial ? eps : eps / m.side_factor(indices[r].total);
        values[r] += eps_spatial;
        max_eps = std::max(max_eps, std::abs(eps));
      }
      break;
    }
    case PerturbationSpec::Kind::fixed_table: {
      for (const auto& [k, eps] : spec.table) {
        if (k.dim() != m.q()) throw DataError("perturbation table index dimension mismatch");
        if (k.total >= m.max_total_degree()) throw DataError("perturbation table index beyond degree bound");
        const Complex eps_spatial = m.side() == Side::spatial ? eps : eps / m.side_factor(k.total);
        values[graded_lex_rank(k)] += eps_spatial;
        max_eps = std::max(max_eps, std::abs(eps));
      }
      break;
    }
  }
  return MomentSet(m.q(), m.side(), m.max_total_degree(), std::move(values), max_eps);
}

double DensityGrid::spacing(int axis) const {
  return (box.hi[axis] - box.lo[axis]) / (shape[axis] - 1);
}

void DensityGrid::validate() const {
  box.validate();
  if (shape.size() != box.dim()) throw DataError("density shape dimension does not match box");
  if ((shape.array() < 2).any()) throw DataError("density grid needs at least 2 nodes per axis");
  Eigen::Index total = 1;
  for (int a = 0; a < shape.size(); ++a) total *= shape[a];
  if (values.size() != total) throw DataError("density value count does not match its shape");
  if (!values.allFinite()) throw DataError("density values must be finite");
  for (int a = 0; a < box.dim(); ++a) {
    if (!(box.hi[a] > box.lo[a])) throw DataError("density box must have positive extent per axis");
  }
}

namespace {

// Smallest per-cell Gauss-Legendre order whose composite rule integrates the
// hardest retained mode to < 1e-8 on this axis, judged against a higher-order
// reference rule. Returns 0 if none of the admissible orders suffices.
int select_cell_order(double lo, double hi, int cells, int max_degree) {
  const auto test_value = [&](int order) {
    const QuadratureRule rule = composite_legendre(lo, hi, cells, order);
    double s = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      const Eigen::VectorXd t = hermite_table(rule.nodes[i], max_degree);
      s += rule.weights[i] * t[max_degree] * t[max_degree];
    }
    return s;
  };
  for (int order = 4; order <= 12; order += 2) {
    if (std::abs(test_value(order) - test_value(order + 3)) < 1e-8) return order;
  }
  return 0;
}

}  // namespace

MomentSet moments_from_density(const DensityGrid& density, int n) {
  density.validate();
  if (n < 1) throw std::invalid_argument("moments_from_density: n must be >= 1");
  const int q = density.q();
  if (q > 3) throw DataError("density ingestion supports q <= 3");
  const int bound = n * n;
  const int max_degree = bound - 1;

  // Per-axis composite rules with cells matching the raster cells, so the
  // multilinear interpolant is a polynomial on every integration cell.
  std::vector<QuadratureRule> rules(q);
  std::vector<Eigen::MatrixXd> tables(q);  // (#nodes x bound) weighted by quadrature
  for (int a = 0; a < q; ++a) {
    const int cells = density.shape[a] - 1;
    const int order = select_cell_order(density.box.lo[a], density.box.hi[a], cells, max_degree);
    if (order == 0) {
      throw DataError("density grid too coarse for requested n (quadrature-degree check fails)");
    }
    Eigen::VectorXd breaks(cells + 1);
    for (int i = 0; i <= cells; ++i) {
      breaks[i] = density.box.lo[a] +
                  (density.box.hi[a] - density.box.lo[a]) * (static_cast<double>(i) / cells);
    }
    rules[a] = composite_legendre(breaks, order);
    tables[a] = hermite_table(rules[a].nodes, max_degree);
  }

  // Multilinear interpolation of the raster at a tensor quadrature node.
  const auto interpolate = [&](const Eigen::VectorXi& node_idx) {
    // Locate the cell per axis and the local fraction within it.
    Eigen::VectorXi cell(q);
    Eigen::VectorXd frac(q);
    for (int a = 0; a < q; ++a) {
      const double x = rules[a].nodes[node_idx[a]];
      const double h = density.spacing(a);
      int c = static_cast<int>(std::floor((x - density.box.lo[a]) / h));
      c = std::clamp(c, 0, density.shape[a] - 2);
      cell[a] = c;
      frac[a] = (x - (density.box.lo[a] + c * h)) / h;
    }
    double value = 0.0;
    for (int corner = 0; corner < (1 << q); ++corner) {
      double w = 1.0;
      Eigen::Index flat = 0;
      for (int a = 0; a < q; ++a) {
        const int bit = (corner >> (q - 1 - a)) & 1;
        w *= bit ? frac[a] : (1.0 - frac[a]);
        flat = flat * density.shape[a] + (cell[a] + bit);
      }
      value += w * density.values[flat];
    }
    return value;
  };

  const auto indices = enumerate_indices(q, bound);
  Eigen::VectorXcd values(static_cast<Eigen::Index>(indices.size()));

  if (q == 1) {
    const Eigen::Index m = rules[0].nodes.size();
    Eigen::VectorXd fw(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::VectorXi idx(1);
      idx[0] = static_cast<int>(i);
      fw[i] = rules[0].weights[i] * interpolate(idx);
    }
    const Eigen::VectorXd mom = tables[0].transpose() * fw;
    for (std::size_t r = 0; r < indices.size(); ++r) {
      values[static_cast<Eigen::Index>(r)] = Complex(mom[indices[r].degrees[0]], 0.0);
    }
  } else if (q == 2) {
    const Eigen::Index m0 = rules[0].nodes.size();
    const Eigen::Index m1 = rules[1].nodes.size();
    Eigen::MatrixXd fw(m0, m1);
    for (Eigen::Index i = 0; i < m0; ++i) {
      for (Eigen::Index j = 0; j < m1; ++j) {
        Eigen::VectorXi idx(2);
        idx[0] = static_cast<int>(i);
        idx[1] = static_cast<int>(j);
        fw(i, j) = rules[0].weights[i] * rules[1].weights[j] * interpolate(idx);
      }
    }
    const Eigen::MatrixXd mom = tables[0].transpose() * fw * tables[1];  // (bound x bound)
    for (std::size_t r = 0; r < indices.size(); ++r) {
      values[static_cast<Eigen::Index>(r)] =
          Complex(mom(indices[r].degrees[0], indices[r].degrees[1]), 0.0);
    }
  } else {
    // q == 3: contract the last two axes per slice of the first.
    const Eigen::Index m0 = rules[0].nodes.size();
    const Eigen::Index m1 = rules[1].nodes.size();
    const Eigen::Index m2 = rules[2].nodes.size();
    std::vector<Eigen::MatrixXd> slice_mom(m0);
    for (Eigen::Index i = 0; i < m0; ++i) {
      Eigen::MatrixXd fw(m1, m2);
      for (Eigen::Index j = 0; j < m1; ++j) {
        for (Eigen::Index l = 0; l < m2; ++l) {
          Eigen::VectorXi idx(3);
          idx[0] = static_cast<int>(i);
          idx[1] = static_cast<int>(j);
          idx[2] = static_cast<int>(l);
          fw(j, l) = rules[0].weights[i] * rules[1].weights[j] * rules[2].weights[l] * interpolate(idx);
        }
      }
      slice_mom[i] = tables[1].transpose() * fw * tables[2];
    }
    for (std::size_t r = 0; r < indices.size(); ++r) {
      const auto& k = indices[r].degrees;
      double s = 0.0;
      for (Eigen::Index i = 0; i < m0; ++i) s += tables[0](i, k[0]) * slice_mom[i](k[1], k[2]);
      values[static_cast<Eigen::Index>(r)] = Complex(s, 0.0);
    }
  }

  return MomentSet(q, Side::spatial, bound, std::move(values));
}

}  // namespace hermiso
