#include "fti/impar.hpp"

#include <string>

#include "fti/errors.hpp"

namespace fti {

namespace {

const EmbeddingSet& checked(const EmbeddingSet& centers, std::size_t k) {
  if (k < 2) throw InputError("IMPAR k must be at least 2");
  if (centers.size() <= k) {
    throw InputError("IMPAR needs more than k = " + std::to_string(k) +
                     " points per set, got " + std::to_string(centers.size()));
  }
  return centers;
}

}  // namespace

HypersphereCover::HypersphereCover(const EmbeddingSet& centers, std::size_t k)
    : HypersphereCover(checked(centers, k), knn(centers, k)) {}

HypersphereCover::HypersphereCover(const EmbeddingSet& centers,
                                   const NeighborLists& lists)
    : centers_(&checked(centers, lists.k())), k_(lists.k()) {
  if (lists.size() != centers.size()) {
    throw InputError("neighbor lists were not built from the given centers");
  }
  radii_.resize(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) radii_[i] = lists.radius(i);
}

bool HypersphereCover::contains(Point p) const {
  if (p.size() != centers_->dim()) {
    throw ShapeError("query dimension " + std::to_string(p.size()) +
                     " does not match cover dimension " +
                     std::to_string(centers_->dim()));
  }
  const double* data = centers_->values().data();
  const std::size_t dim = centers_->dim();
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (l2_bounded(data + i * dim, p.data(), dim, radii_[i]) <= radii_[i]) return true;
  }
  return false;
}

double HypersphereCover::coverage(const EmbeddingSet& queries) const {
  if (queries.dim() != centers_->dim()) {
    throw ShapeError("query dimension " + std::to_string(queries.dim()) +
                     " does not match cover dimension " +
                     std::to_string(centers_->dim()));
  }
  const std::size_t m = queries.size();
  std::size_t inside = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : inside)
  for (std::size_t q = 0; q < m; ++q) {
    if (contains(queries.row(q))) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(m);
}

PrecisionRecall impar_precision_recall(const EmbeddingSet& real,
                                       const EmbeddingSet& fake,
                                       std::size_t k) {
  if (real.dim() != fake.dim()) {
    throw ShapeError("real set has dimension " + std::to_string(real.dim()) +
                     ", fake set has dimension " + std::to_string(fake.dim()));
  }
  const HypersphereCover real_cover(real, k);
  const HypersphereCover fake_cover(fake, k);
  return {real_cover.coverage(fake), fake_cover.coverage(real), k};
}

}  // namespace fti
