#pragma once

#include <vector>

#include "hermiso/detect.hpp"
#include "hermiso/geometry.hpp"

namespace hermiso {

struct GroupStats {
  int cardinality = 0;
  Point centroid;               // |amplitude|-weighted
  Box bounding_box;
  double total_abs_amplitude = 0.0;  // sum of |a|, not |sum a|
};

/// A composite object: spikes linked at the grouping radius, carrying the
/// per-spike (location, amplitude) template rows.
struct Group {
  int id = 0;
  std::vector<DetectedSpike> members;
  GroupStats stats;
};

/// Single-linkage partition of the spikes at `grouping_radius`. Groups are
/// ordered by their lexicographically smallest member location; the union of
/// members is the input set and group sizes sum to the spike count.
std::vector<Group> group_spikes(const std::vector<DetectedSpike>& spikes, double grouping_radius);

}  // namespace hermiso
