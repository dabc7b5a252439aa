#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace hermiso {

/// A tuple of per-axis Hermite degrees together with its l1 total degree.
/// `total` is maintained by make_index(); treat instances as immutable.
struct MultiIndex {
  Eigen::VectorXi degrees;
  int total = 0;

  int dim() const { return static_cast<int>(degrees.size()); }
};

MultiIndex make_index(Eigen::VectorXi degrees);
MultiIndex make_index(std::initializer_list<int> degrees);

/// Graded-lexicographic order: by total degree first, then ascending
/// lexicographic on the degree tuple (first axis most significant).
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// Number of multi-indices in q axes with total degree < bound,
/// i.e. binomial(bound - 1 + q, q).
std::uint64_t index_count(int q, int total_degree_bound);

/// All multi-indices with |k|_1 < total_degree_bound in graded-lex order.
std::vector<MultiIndex> enumerate_indices(int q, int total_degree_bound);

/// Position of `k` in the graded-lex enumeration. Independent of any
/// degree bound, so ranks are stable across moment sets of different depth.
Eigen::Index graded_lex_rank(const MultiIndex& k);

std::uint64_t binomial(int n, int k);

}  // namespace hermiso
