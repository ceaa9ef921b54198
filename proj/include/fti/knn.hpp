#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fti/embedding.hpp"

namespace fti {

struct Neighbor {
  std::uint32_t index;
  double distance;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Strict weak order on (distance, index); the tie rule for every k-NN list.
constexpr bool neighbor_less(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance ||
         (a.distance == b.distance && a.index < b.index);
}

// Exactly k neighbors per point, self excluded, sorted by neighbor_less.
class NeighborLists {
 public:
  NeighborLists(std::size_t k, std::vector<Neighbor> flat);

  std::size_t k() const { return k_; }
  std::size_t size() const { return k_ == 0 ? 0 : flat_.size() / k_; }
  std::span<const Neighbor> of(std::size_t i) const {
    return {flat_.data() + i * k_, k_};
  }
  // Distance to the k-th (furthest retained) neighbor of point i.
  double radius(std::size_t i) const { return flat_[i * k_ + k_ - 1].distance; }

 private:
  std::size_t k_;
  std::vector<Neighbor> flat_;
};

// L2 distance. Throws ShapeError when dimensions differ.
double euclidean_distance(Point a, Point b);

// Squared L2 with four independent partial sums so the loop vectorizes. The
// summation order is fixed, so results are reproducible run to run.
inline double l2_squared(const double* a, const double* b, std::size_t dim) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t d = 0;
  for (; d + 4 <= dim; d += 4) {
    const double e0 = a[d] - b[d], e1 = a[d + 1] - b[d + 1];
    const double e2 = a[d + 2] - b[d + 2], e3 = a[d + 3] - b[d + 3];
    s0 += e0 * e0;
    s1 += e1 * e1;
    s2 += e2 * e2;
    s3 += e3 * e3;
  }
  for (; d < dim; ++d) {
    const double e = a[d] - b[d];
    s0 += e * e;
  }
  return (s0 + s1) + (s2 + s3);
}

inline double l2_unchecked(const double* a, const double* b, std::size_t dim) {
  return std::sqrt(l2_squared(a, b, dim));
}

// Relative slack on squared thresholds: a partial sum above limit^2 * (1 + slack)
// guarantees the final distance exceeds limit, whatever the rounding.
inline constexpr double kAbandonSlack = 1e-9;

// Distance from a to b, or +inf once the running sum proves it exceeds
// `limit`. Any returned finite value equals l2_unchecked(a, b, dim) exactly.
inline double l2_bounded(const double* a, const double* b, std::size_t dim,
                         double limit) {
  constexpr std::size_t kChunk = 16;
  if (dim <= kChunk || !std::isfinite(limit)) return l2_unchecked(a, b, dim);
  const double bound = limit * limit * (1.0 + kAbandonSlack);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t d = 0;
  while (d + 4 <= dim) {
    const std::size_t stop = std::min(dim - dim % 4, d + kChunk);
    for (; d < stop; d += 4) {
      const double e0 = a[d] - b[d], e1 = a[d + 1] - b[d + 1];
      const double e2 = a[d + 2] - b[d + 2], e3 = a[d + 3] - b[d + 3];
      s0 += e0 * e0;
      s1 += e1 * e1;
      s2 += e2 * e2;
      s3 += e3 * e3;
    }
    if ((s0 + s1) + (s2 + s3) > bound) return std::numeric_limits<double>::infinity();
  }
  for (; d < dim; ++d) {
    const double e = a[d] - b[d];
    s0 += e * e;
  }
  return std::sqrt((s0 + s1) + (s2 + s3));
}

// Exact k-NN by blocked quadratic scan, parallel over query rows.
// Requires 2 <= k <= N-1 (throws InputError otherwise). The result does not
// depend on the number of worker threads.
NeighborLists knn(const EmbeddingSet& set, std::size_t k);

struct CrossHit {
  double distance;
  bool inside;  // distance < radius of that original point (strict)
};

// For every original point: distance to `query` and whether the query would
// enter its k-NN list.
std::vector<CrossHit> cross_knn_threshold(const EmbeddingSet& original,
                                          const NeighborLists& lists,
                                          Point query);

}  // namespace fti
