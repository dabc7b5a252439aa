#include "hermiso/multi_index.hpp"

#include <stdexcept>

namespace hermiso {

MultiIndex make_index(Eigen::VectorXi degrees) {
  if (degrees.size() < 1) throw std::invalid_argument("multi-index needs at least one axis");
  if ((degrees.array() < 0).any()) throw std::invalid_argument("multi-index degrees must be nonnegative");
  MultiIndex k;
  k.total = degrees.sum();
  k.degrees = std::move(degrees);
  return k;
}

MultiIndex make_index(std::initializer_list<int> degrees) {
  Eigen::VectorXi d(static_cast<Eigen::Index>(degrees.size()));
  Eigen::Index i = 0;
  for (int v : degrees) d[i++] = v;
  return make_index(std::move(d));
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.total != b.total) return a.total < b.total;
  for (Eigen::Index i = 0; i < a.degrees.size(); ++i) {
    if (a.degrees[i] != b.degrees[i]) return a.degrees[i] < b.degrees[i];
  }
  return false;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t index_count(int q, int total_degree_bound) {
  if (q < 1) throw std::invalid_argument("dimension must be >= 1");
  if (total_degree_bound < 0) throw std::invalid_argument("degree bound must be >= 0");
  return binomial(total_degree_bound - 1 + q, q);
}

namespace {

void emit_grade(Eigen::VectorXi& work, int axis, int remaining, std::vector<MultiIndex>& out) {
  const int q = static_cast<int>(work.size());
  if (axis == q - 1) {
    work[axis] = remaining;
    MultiIndex k;
    k.degrees = work;
    k.total = work.sum();
    out.push_back(std::move(k));
    return;
  }
  for (int d = 0; d <= remaining; ++d) {
    work[axis] = d;
    emit_grade(work, axis + 1, remaining - d, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(int q, int total_degree_bound) {
  if (q < 1) throw std::invalid_argument("dimension must be >= 1");
  if (total_degree_bound < 0) throw std::invalid_argument("degree bound must be >= 0");
  std::vector<MultiIndex> out;
  out.reserve(index_count(q, total_degree_bound));
  Eigen::VectorXi work(q);
  for (int t = 0; t < total_degree_bound; ++t) emit_grade(work, 0, t, out);
  return out;
}

Eigen::Index graded_lex_rank(const MultiIndex& k) {
  const int q = k.dim();
  std::uint64_t rank = index_count(q, k.total);  // all strictly lower grades
  // Rank within the grade: indices of the same total that are lex-smaller.
  int remaining = k.total;
  for (int axis = 0; axis < q - 1; ++axis) {
    const int parts = q - axis - 1;
    for (int d = 0; d < k.degrees[axis]; ++d) {
      rank += binomial(remaining - d + parts - 1, parts - 1);
    }
    remaining -= k.degrees[axis];
  }
  return static_cast<Eigen::Index>(rank);
}

}  // namespace hermiso
