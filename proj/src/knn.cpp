#include "fti/knn.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fti/errors.hpp"

namespace fti {
namespace {

constexpr std::size_t kQueryBlock = 32;
constexpr std::size_t kReferenceTile = 256;

// Bounded sorted insertion. References arrive in ascending index order, so a
// candidate that only ties the current worst is rejected, which is exactly the
// (distance, index) rule.
void offer(Neighbor* list, std::size_t k, std::size_t& filled, Neighbor c) {
  if (filled == k) {
    if (!(c.distance < list[k - 1].distance)) return;
    --filled;
  }
  std::size_t pos = filled;
  while (pos > 0 && neighbor_less(c, list[pos - 1])) {
    list[pos] = list[pos - 1];
    --pos;
  }
  list[pos] = c;
  ++filled;
}

}  // namespace

NeighborLists::NeighborLists(std::size_t k, std::vector<Neighbor> flat)
    : k_(k), flat_(std::move(flat)) {}

double euclidean_distance(Point a, Point b) {
  if (a.size() != b.size()) {
    throw ShapeError("dimension mismatch: " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
  return l2_unchecked(a.data(), b.data(), a.size());
}

NeighborLists knn(const EmbeddingSet& set, std::size_t k) {
  const std::size_t n = set.size();
  if (k < 2 || n < 3 || k > n - 1) {
    throw InputError("k = " + std::to_string(k) + " out of range: need 2 <= k <= N-1 = " +
                     std::to_string(n == 0 ? 0 : n - 1));
  }
  const std::size_t dim = set.dim();
  const double* data = set.values().data();
  std::vector<Neighbor> flat(n * k);
  const std::size_t blocks = (n + kQueryBlock - 1) / kQueryBlock;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t q0 = b * kQueryBlock;
    const std::size_t q1 = std::min(n, q0 + kQueryBlock);
    std::size_t filled[kQueryBlock] = {};
    for (std::size_t r0 = 0; r0 < n; r0 += kReferenceTile) {
      const std::size_t r1 = std::min(n, r0 + kReferenceTile);
      for (std::size_t q = q0; q < q1; ++q) {
        Neighbor* list = flat.data() + q * k;
        std::size_t& count = filled[q - q0];
        const double* qp = data + q * dim;
        for (std::size_t r = r0; r < r1; ++r) {
          if (r == q) continue;
          const double limit = count == k ? list[k - 1].distance
                                          : std::numeric_limits<double>::infinity();
          const double d = l2_bounded(qp, data + r * dim, dim, limit);
          if (d == std::numeric_limits<double>::infinity()) continue;
          offer(list, k, count, {static_cast<std::uint32_t>(r), d});
        }
      }
    }
  }
  return NeighborLists(k, std::move(flat));
}

std::vector<CrossHit> cross_knn_threshold(const EmbeddingSet& original,
                                          const NeighborLists& lists,
                                          Point query) {
  if (query.size() != original.dim()) {
    throw ShapeError("query dimension " + std::to_string(query.size()) +
                     " does not match embedding dimension " +
                     std::to_string(original.dim()));
  }
  std::vector<CrossHit> hits(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double d = l2_unchecked(original.row(i).data(), query.data(), query.size());
    hits[i] = {d, d < lists.radius(i)};
  }
  return hits;
}

}  // namespace fti
