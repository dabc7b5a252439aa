#include "hermiso/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hermiso {

namespace {

bool location_lex_less(const Point& a, const Point& b) {
  for (Eigen::Index d = 0; d < a.size(); ++d) {
    if (a[d] != b[d]) return a[d] < b[d];
  }
  return false;
}

GroupStats compute_stats(const std::vector<DetectedSpike>& members) {
  GroupStats s;
  s.cardinality = static_cast<int>(members.size());
  const Eigen::Index q = members.front().location.size();
  s.bounding_box.lo = members.front().location;
  s.bounding_box.hi = members.front().location;
  Point weighted = Point::Zero(q);
  double weight = 0.0;
  for (const auto& spike : members) {
    const double w = std::abs(spike.amplitude);
    weighted += w * spike.location;
    weight += w;
    s.total_abs_amplitude += w;
    s.bounding_box.lo = s.bounding_box.lo.cwiseMin(spike.location);
    s.bounding_box.hi = s.bounding_box.hi.cwiseMax(spike.location);
  }
  s.centroid = weight > 0.0 ? Point(weighted / weight) : members.front().location;
  return s;
}

}  // namespace

std::vector<Group> group_spikes(const std::vector<DetectedSpike>& spikes, double grouping_radius) {
  if (!(grouping_radius > 0.0)) throw std::invalid_argument("group_spikes: radius must be positive");
  std::vector<Group> groups;
  if (spikes.empty()) return groups;

  // Sorted processing makes the partition independent of input order.
  std::vector<std::size_t> order(spikes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return location_lex_less(spikes[i].location, spikes[j].location);
  });

  std::vector<std::size_t> parent(order.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double r2 = grouping_radius * grouping_radius;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if ((spikes[order[i]].location - spikes[order[j]].location).squaredNorm() <= r2) {
        parent[find(i)] = find(j);
      }
    }
  }

  std::vector<int> root_to_group(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t r = find(i);
    if (root_to_group[r] < 0) {
      root_to_group[r] = static_cast<int>(groups.size());
      Group g;
      g.id = root_to_group[r];
      groups.push_back(std::move(g));
    }
    groups[root_to_group[r]].members.push_back(spikes[order[i]]);
  }
  for (auto& g : groups) g.stats = compute_stats(g.members);
  return groups;
}

}  // namespace hermiso
