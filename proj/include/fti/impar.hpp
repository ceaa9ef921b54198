#pragma once

#include <cstddef>
#include <vector>

#include "fti/embedding.hpp"
#include "fti/knn.hpp"

namespace fti {

inline constexpr std::size_t kImparDefaultK = 3;

// Hyperspheres centred on each point with radius = distance to its k-th
// nearest neighbor in the same set.
class HypersphereCover {
 public:
  HypersphereCover(const EmbeddingSet& centers, std::size_t k);
  // Reuses k-NN lists already computed for `centers`; k = lists.k().
  HypersphereCover(const EmbeddingSet& centers, const NeighborLists& lists);

  const EmbeddingSet& centers() const { return *centers_; }
  std::size_t k() const { return k_; }
  double radius(std::size_t i) const { return radii_[i]; }
  const std::vector<double>& radii() const { return radii_; }

  // Inside at least one sphere; the boundary counts as inside.
  bool contains(Point p) const;
  // Fraction of `queries` inside the cover.
  double coverage(const EmbeddingSet& queries) const;

 private:
  const EmbeddingSet* centers_;
  std::size_t k_;
  std::vector<double> radii_;
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  std::size_t k = kImparDefaultK;
};

// precision: fake points inside the real cover; recall: real points inside
// the fake cover. Both sets need more than k points.
PrecisionRecall impar_precision_recall(const EmbeddingSet& real,
                                       const EmbeddingSet& fake,
                                       std::size_t k = kImparDefaultK);

}  // namespace fti
