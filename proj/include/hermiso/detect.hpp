#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hermiso/geometry.hpp"
#include "hermiso/moments.hpp"
#include "hermiso/pio.hpp"

namespace hermiso {

/// Two-scale recovery configuration. Exactly one of threshold_abs /
/// threshold_rel must be set; threshold_abs plays the role of the level-set
/// cut, threshold_rel expresses it as a fraction of the grid max modulus.
/// refine_factor is the fine-to-coarse resolution ratio of the argmax search.
struct DetectConfig {
  int n = 8;
  int refine_factor = 1;
  std::optional<double> threshold_abs;
  std::optional<double> threshold_rel;
  std::optional<double> linkage_radius;  // derived from coarse cluster gaps if unset
  Box box;
  double coarse_spacing = 0.1;
  FilterSpec filter;
  bool compensated_sum = false;
  int workers = 1;
  Eigen::Index node_cap = kDefaultGridNodeCap;

  void validate() const;
  PioConfig pio() const;
};

struct DetectedSpike {
  Point location;
  Complex amplitude = 0.0;
  bool amplitude_valid = true;
  Complex peak_value = 0.0;
  int cluster_id = 0;
  Eigen::Index cluster_node_count = 0;
};

struct DetectionDiagnostics {
  double threshold_used = 0.0;
  bool threshold_was_relative = false;
  double linkage_radius_used = 0.0;
  double grid_max_abs = 0.0;
  Eigen::Index grid_nodes = 0;
  double min_spike_distance = 0.0;  // +inf when fewer than two spikes
  double noise_bound = 0.0;         // worst-case |E_n| over the grid, 0 if unperturbed
  bool noise_dominated = false;     // threshold/noise ratio < 1
};

struct DetectionResult {
  std::vector<DetectedSpike> spikes;
  DetectionDiagnostics diagnostics;

  int count() const { return static_cast<int>(spikes.size()); }
};

/// Nodes of the level set {|T_n| >= threshold}. An all-zero grid yields the
/// empty set whatever the relative threshold.
std::vector<Eigen::Index> super_level_set(const GridEvaluation& grid, double threshold);

/// Resolved absolute threshold for a grid: threshold_abs, or threshold_rel
/// times the grid max modulus.
double resolve_threshold(const DetectConfig& cfg, const GridEvaluation& grid);

/// Single-linkage clusters: nodes join when their Euclidean distance is
/// <= linkage_radius. Clusters are sorted by their lexicographically smallest
/// member, which fixes the cluster ids.
std::vector<std::vector<Eigen::Index>> cluster_nodes(const Lattice& lattice,
                                                     const std::vector<Eigen::Index>& nodes,
                                                     double linkage_radius);

/// Argmax of |T_n| on the fine lattice (spacing coarse/refine_factor) covering
/// the cluster bounding box inflated by one coarse cell. The fine lattice is
/// anchored on coarse nodes so refinement only subdivides coarse cells. Ties
/// break to the lexicographically smallest node.
Point refine_argmax(const DetectConfig& cfg, const MomentSet& m, const Lattice& coarse,
                    const std::vector<Eigen::Index>& cluster,
                    Complex* peak_value = nullptr);

/// a-hat = T_n(x) / Phi_n(x, x). Fails (amplitude_valid=false downstream) when
/// the diagonal kernel vanishes, i.e. the point lies outside the kernel's
/// validity region.
Complex amplitude_at(const PioConfig& cfg, const MomentSet& m, const Point& x, bool* valid = nullptr);

/// Full pipeline: coarse grid -> level set -> clusters -> per-cluster refined
/// argmax -> amplitude extraction. Fourier-side input is converted first.
/// An empty level set is a valid result with count 0, not an error.
DetectionResult detect(const DetectConfig& cfg, const MomentSet& m);

}  // namespace hermiso
