#include "hermiso/pio.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "hermiso/errors.hpp"
#include "hermiso/hermite.hpp"

namespace hermiso {

void PioConfig::validate() const {
  if (n < 1) throw std::invalid_argument("pio: n must be >= 1");
  if (q < 1) throw std::invalid_argument("pio: q must be >= 1");
}

PioPlan::PioPlan(const PioConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const int bound = cfg_.n * cfg_.n;
  const auto indices = enumerate_indices(cfg_.q, bound);

  // Filter weight depends on the total degree only.
  Eigen::VectorXd grade_weight(bound);
  for (int t = 0; t < bound; ++t) {
    grade_weight[t] = filter_eval(cfg_.filter, std::sqrt(static_cast<double>(t)) / cfg_.n);
  }

  degrees_.resize(indices.size() * static_cast<std::size_t>(cfg_.q));
  weights_.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t r = 0; r < indices.size(); ++r) {
    for (int a = 0; a < cfg_.q; ++a) degrees_[r * cfg_.q + a] = indices[r].degrees[a];
    weights_[static_cast<Eigen::Index>(r)] = grade_weight[indices[r].total];
  }
  scale_ = std::pow(static_cast<double>(cfg_.n), -cfg_.q);
}

std::complex<double> PioPlan::accumulate(const std::vector<const double*>& axis_tables,
                                         const Eigen::VectorXcd& values) const {
  const int q = cfg_.q;
  const Eigen::Index count = term_count();
  const int* deg = degrees_.data();
  std::complex<double> acc(0.0, 0.0);
  if (!cfg_.compensated_sum) {
    for (Eigen::Index r = 0; r < count; ++r, deg += q) {
      double p = axis_tables[0][deg[0]];
      for (int a = 1; a < q; ++a) p *= axis_tables[a][deg[a]];
      acc += weights_[r] * (values[r] * p);
    }
  } else {
    // Kahan accumulation, real and imaginary parts compensated separately.
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;
    for (Eigen::Index r = 0; r < count; ++r, deg += q) {
      double p = axis_tables[0][deg[0]];
      for (int a = 1; a < q; ++a) p *= axis_tables[a][deg[a]];
      const std::complex<double> term = weights_[r] * (values[r] * p);
      double yr = term.real() - cr;
      double tr = sr + yr;
      cr = (tr - sr) - yr;
      sr = tr;
      double yi = term.imag() - ci;
      double ti = si + yi;
      ci = (ti - si) - yi;
      si = ti;
    }
    acc = {sr, si};
  }
  return scale_ * acc;
}

double PioPlan::accumulate_kernel(const std::vector<const double*>& x_tables,
                                  const std::vector<const double*>& y_tables) const {
  const int q = cfg_.q;
  const Eigen::Index count = term_count();
  const int* deg = degrees_.data();
  double acc = 0.0;
  for (Eigen::Index r = 0; r < count; ++r, deg += q) {
    double px = x_tables[0][deg[0]];
    double py = y_tables[0][deg[0]];
    for (int a = 1; a < q; ++a) {
      px *= x_tables[a][deg[a]];
      py *= y_tables[a][deg[a]];
    }
    acc += weights_[r] * (py * px);
  }
  return scale_ * acc;
}

namespace {

void require_compatible(const PioConfig& cfg, const MomentSet& m) {
  if (m.q() != cfg.q) throw DataError("moment set dimension does not match pio configuration");
  if (m.side() != Side::spatial) {
    throw DataError("pio evaluation requires spatial-side moments; convert_side first");
  }
  if (m.max_total_degree() < cfg.n * cfg.n) {
    throw DataError("moment set too shallow for n=" + std::to_string(cfg.n) +
                    ": need max_total_degree >= " + std::to_string(cfg.n * cfg.n));
  }
}

std::vector<Eigen::VectorXd> point_tables(const Point& x, int max_degree) {
  std::vector<Eigen::VectorXd> tables(x.size());
  for (Eigen::Index a = 0; a < x.size(); ++a) tables[a] = hermite_table(x[a], max_degree);
  return tables;
}

std::vector<const double*> table_pointers(const std::vector<Eigen::VectorXd>& tables) {
  std::vector<const double*> ptr(tables.size());
  for (std::size_t a = 0; a < tables.size(); ++a) ptr[a] = tables[a].data();
  return ptr;
}

}  // namespace

std::complex<double> pio_eval(const PioConfig& cfg, const MomentSet& m, const Point& x) {
  require_compatible(cfg, m);
  if (x.size() != cfg.q) throw DataError("evaluation point dimension mismatch");
  const PioPlan plan(cfg);
  const auto tables = point_tables(x, plan.degree_bound() - 1);
  return plan.accumulate(table_pointers(tables), m.spatial_values());
}

double kernel_eval(const PioConfig& cfg, const Point& x, const Point& y) {
  cfg.validate();
  if (x.size() != cfg.q || y.size() != cfg.q) throw DataError("kernel point dimension mismatch");
  const PioPlan plan(cfg);
  const auto tx = point_tables(x, plan.degree_bound() - 1);
  const auto ty = point_tables(y, plan.degree_bound() - 1);
  return plan.accumulate_kernel(table_pointers(tx), table_pointers(ty));
}

double kernel_diag(const PioConfig& cfg, const Point& x) {
  cfg.validate();
  if (x.size() != cfg.q) throw DataError("kernel point dimension mismatch");
  const PioPlan plan(cfg);
  const auto tx = point_tables(x, plan.degree_bound() - 1);
  const auto ptr = table_pointers(tx);
  return plan.accumulate_kernel(ptr, ptr);
}

GridEvaluation pio_eval_grid(const PioConfig& cfg, const MomentSet& m, const Lattice& lattice,
                             int workers, Eigen::Index node_cap) {
  require_compatible(cfg, m);
  if (lattice.dim() != cfg.q) throw DataError("lattice dimension does not match pio configuration");
  if (lattice.size() > node_cap) {
    throw DataError("grid would have " + std::to_string(lattice.size()) +
                    " nodes, above the cap of " + std::to_string(node_cap) +
                    "; enlarge the spacing, shrink the box, or raise the cap");
  }
  if (workers < 1) workers = 1;

  const PioPlan plan(cfg);
  const int max_degree = plan.degree_bound() - 1;

  // One table per axis, one column per distinct coordinate.
  std::vector<Eigen::MatrixXd> tables(cfg.q);
  for (int a = 0; a < cfg.q; ++a) {
    tables[a].resize(max_degree + 1, lattice.axis(a).size());
    for (Eigen::Index i = 0; i < lattice.axis(a).size(); ++i) {
      tables[a].col(i) = hermite_table(lattice.axis(a)[i], max_degree);
    }
  }

  GridEvaluation out;
  out.lattice = lattice;
  out.values.resize(lattice.size());

  const auto run_range = [&](Eigen::Index begin, Eigen::Index end) {
    std::vector<const double*> cols(cfg.q);
    Eigen::VectorXi idx = lattice.unflatten(begin);
    for (Eigen::Index flat = begin; flat < end; ++flat) {
      for (int a = 0; a < cfg.q; ++a) cols[a] = tables[a].col(idx[a]).data();
      out.values[flat] = plan.accumulate(cols, m.spatial_values());
      // advance the index tuple, last axis fastest
      for (int a = cfg.q - 1; a >= 0; --a) {
        if (++idx[a] < lattice.axis(a).size()) break;
        idx[a] = 0;
      }
    }
  };

  if (workers == 1 || lattice.size() < 2 * workers) {
    run_range(0, lattice.size());
  } else {
    std::vector<std::thread> pool;
    const Eigen::Index chunk = (lattice.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const Eigen::Index begin = w * chunk;
      const Eigen::Index end = std::min(lattice.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  out.max_abs = 0.0;
  out.argmax = 0;
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    const double a = std::abs(out.values[i]);
    if (a > out.max_abs) {
      out.max_abs = a;
      out.argmax = i;
    }
  }

  // Worst-case noise amplification over this grid: n^{-q} sum_j w_j sup|psi_j|
  // with per-axis sups taken over the tabulated coordinates.
  std::vector<Eigen::VectorXd> sup(cfg.q);
  for (int a = 0; a < cfg.q; ++a) sup[a] = tables[a].array().abs().rowwise().maxCoeff();
  double amp = 0.0;
  for (Eigen::Index r = 0; r < plan.term_count(); ++r) {
    double p = 1.0;
    for (int a = 0; a < cfg.q; ++a) p *= sup[a][plan.degree(r, a)];
    amp += plan.term_weights()[r] * p;
  }
  out.noise_amplification = amp * std::pow(static_cast<double>(cfg.n), -cfg.q);
  return out;
}

GridEvaluation pio_eval_grid(const PioConfig& cfg, const MomentSet& m, const Box& box,
                             double spacing, int workers, Eigen::Index node_cap) {
  return pio_eval_grid(cfg, m, Lattice::covering(box, spacing), workers, node_cap);
}

}  // namespace hermiso
