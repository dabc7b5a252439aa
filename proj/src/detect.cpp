#include "hermiso/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hermiso/errors.hpp"

namespace hermiso {

void DetectConfig::validate() const {
  if (n < 1) throw std::invalid_argument("detect: n must be >= 1");
  if (refine_factor < 1) throw std::invalid_argument("detect: refine_factor must be >= 1");
  if (!(coarse_spacing > 0.0)) throw std::invalid_argument("detect: coarse_spacing must be positive");
  if (threshold_abs.has_value() == threshold_rel.has_value()) {
    throw std::invalid_argument("detect: set exactly one of threshold_abs / threshold_rel");
  }
  if (threshold_abs && !(*threshold_abs > 0.0)) {
    throw std::invalid_argument("detect: threshold_abs must be positive");
  }
  if (threshold_rel && !(*threshold_rel > 0.0 && *threshold_rel < 1.0)) {
    throw std::invalid_argument("detect: threshold_rel must lie in (0, 1)");
  }
  if (linkage_radius && !(*linkage_radius > coarse_spacing)) {
    throw std::invalid_argument("detect: linkage_radius must exceed coarse_spacing");
  }
  box.validate();
}

PioConfig DetectConfig::pio() const {
  PioConfig cfg;
  cfg.n = n;
  cfg.q = box.dim();
  cfg.filter = filter;
  cfg.compensated_sum = compensated_sum;
  return cfg;
}

double resolve_threshold(const DetectConfig& cfg, const GridEvaluation& grid) {
  return cfg.threshold_abs ? *cfg.threshold_abs : *cfg.threshold_rel * grid.max_abs;
}

std::vector<Eigen::Index> super_level_set(const GridEvaluation& grid, double threshold) {
  std::vector<Eigen::Index> nodes;
  if (grid.max_abs == 0.0) return nodes;  // all-zero grid: empty by convention
  for (Eigen::Index i = 0; i < grid.values.size(); ++i) {
    if (std::abs(grid.values[i]) >= threshold) nodes.push_back(i);
  }
  return nodes;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::vector<Eigen::Index>> cluster_nodes(const Lattice& lattice,
                                                     const std::vector<Eigen::Index>& nodes,
                                                     double linkage_radius) {
  std::vector<std::vector<Eigen::Index>> clusters;
  if (nodes.empty()) return clusters;

  // Process in flat order (= lexicographic on index tuples).
  std::vector<Eigen::Index> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());

  std::vector<Point> coords(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) coords[i] = lattice.node(sorted[i]);

  UnionFind uf(sorted.size());
  const double r2 = linkage_radius * linkage_radius;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if ((coords[i] - coords[j]).squaredNorm() <= r2) uf.unite(i, j);
    }
  }

  std::vector<std::size_t> root_order;  // roots in order of first appearance = lex-smallest member
  std::vector<int> root_to_cluster(sorted.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::size_t r = uf.find(i);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[root_to_cluster[r]].push_back(sorted[i]);
  }
  return clusters;
}

Point refine_argmax(const DetectConfig& cfg, const MomentSet& m, const Lattice& coarse,
                    const std::vector<Eigen::Index>& cluster, Complex* peak_value) {
  if (cluster.empty()) throw std::invalid_argument("refine_argmax: cluster must be nonempty");
  const int q = coarse.dim();

  // Bounding box of the cluster in coarse index space, inflated by one cell
  // and clamped to the lattice.
  Eigen::VectorXi lo = Eigen::VectorXi::Constant(q, std::numeric_limits<int>::max());
  Eigen::VectorXi hi = Eigen::VectorXi::Constant(q, std::numeric_limits<int>::min());
  for (Eigen::Index flat : cluster) {
    const Eigen::VectorXi idx = coarse.unflatten(flat);
    lo = lo.cwiseMin(idx);
    hi = hi.cwiseMax(idx);
  }
  for (int a = 0; a < q; ++a) {
    lo[a] = std::max(lo[a] - 1, 0);
    hi[a] = std::min(hi[a] + 1, static_cast<int>(coarse.axis(a).size()) - 1);
  }

  const double fine_spacing = cfg.coarse_spacing / cfg.refine_factor;
  Point anchor(q);
  Eigen::VectorXi counts(q);
  for (int a = 0; a < q; ++a) {
    anchor[a] = coarse.axis(a)[lo[a]];
    counts[a] = (hi[a] - lo[a]) * cfg.refine_factor + 1;
  }
  const Lattice fine = Lattice::anchored(anchor, fine_spacing, counts);
  const GridEvaluation eval = pio_eval_grid(cfg.pio(), m, fine, cfg.workers, cfg.node_cap);

  // First maximum in flat order = lexicographically smallest tie-break.
  if (peak_value) *peak_value = eval.values[eval.argmax];
  return fine.node(eval.argmax);
}

Complex amplitude_at(const PioConfig& cfg, const MomentSet& m, const Point& x, bool* valid) {
  const double diag = kernel_diag(cfg, x);
  if (!(diag > 1e-12)) {
    if (valid) *valid = false;
    return Complex(0.0, 0.0);
  }
  if (valid) *valid = true;
  return pio_eval(cfg, m, x) / diag;
}

DetectionResult detect(const DetectConfig& cfg, const MomentSet& m_in) {
  cfg.validate();
  const MomentSet m = m_in.side() == Side::spatial ? m_in : convert_side(m_in);
  if (m.q() != cfg.box.dim()) throw DataError("moment set dimension does not match detection box");

  const GridEvaluation grid = pio_eval_grid(cfg.pio(), m, cfg.box, cfg.coarse_spacing,
                                            cfg.workers, cfg.node_cap);

  DetectionResult result;
  result.diagnostics.grid_max_abs = grid.max_abs;
  result.diagnostics.grid_nodes = grid.values.size();
  result.diagnostics.threshold_was_relative = cfg.threshold_rel.has_value();
  const double threshold = resolve_threshold(cfg, grid);
  result.diagnostics.threshold_used = threshold;
  result.diagnostics.noise_bound = m.max_perturbation() * grid.noise_amplification;
  result.diagnostics.noise_dominated =
      result.diagnostics.noise_bound > 0.0 && threshold < result.diagnostics.noise_bound;
  result.diagnostics.min_spike_distance = std::numeric_limits<double>::infinity();

  const std::vector<Eigen::Index> level_set = super_level_set(grid, threshold);
  if (level_set.empty()) {
    result.diagnostics.linkage_radius_used = cfg.linkage_radius.value_or(2.0 * cfg.coarse_spacing);
    return result;  // count 0, valid outcome
  }

  // Linkage radius: user value, or half the smallest inter-cluster gap seen
  // with a provisional radius of two coarse cells.
  double linkage = cfg.linkage_radius.value_or(0.0);
  if (!cfg.linkage_radius) {
    const double provisional = 2.0 * cfg.coarse_spacing;
    const auto trial = cluster_nodes(grid.lattice, level_set, provisional);
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trial.size(); ++i) {
      for (std::size_t j = i + 1; j < trial.size(); ++j) {
        for (Eigen::Index a : trial[i]) {
          const Point pa = grid.lattice.node(a);
          for (Eigen::Index b : trial[j]) {
            min_gap = std::min(min_gap, (pa - grid.lattice.node(b)).norm());
          }
        }
      }
    }
    linkage = (trial.size() >= 2 && min_gap / 2.0 > provisional) ? min_gap / 2.0 : provisional;
  }
  result.diagnostics.linkage_radius_used = linkage;

  const auto clusters = cluster_nodes(grid.lattice, level_set, linkage);
  const PioConfig pio_cfg = cfg.pio();
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    DetectedSpike spike;
    spike.cluster_id = static_cast<int>(c);
    spike.cluster_node_count = static_cast<Eigen::Index>(clusters[c].size());
    spike.location = refine_argmax(cfg, m, grid.lattice, clusters[c], &spike.peak_value);
    spike.amplitude = amplitude_at(pio_cfg, m, spike.location, &spike.amplitude_valid);
    result.spikes.push_back(std::move(spike));
  }

  for (std::size_t i = 0; i < result.spikes.size(); ++i) {
    for (std::size_t j = i + 1; j < result.spikes.size(); ++j) {
      result.diagnostics.min_spike_distance =
          std::min(result.diagnostics.min_spike_distance,
                   (result.spikes[i].location - result.spikes[j].location).norm());
    }
  }
  return result;
}

}  // namespace hermiso
