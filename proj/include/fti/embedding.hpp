#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fti {

using Point = std::span<const double>;

// N points in D dimensions, stored row-major. Row order is the input order
// and serves as the point id. Every coordinate is finite.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;

  // Throws InputError on empty/ragged data or non-finite values.
  EmbeddingSet(std::vector<double> values, std::size_t dim);
  static EmbeddingSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return size_ == 0; }

  Point row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  std::span<const double> values() const { return values_; }

  // Rows of a followed by rows of b. Throws ShapeError on dim mismatch.
  static EmbeddingSet concat(const EmbeddingSet& a, const EmbeddingSet& b);

 private:
  std::vector<double> values_;
  std::size_t size_ = 0;
  std::size_t dim_ = 0;
};

}  // namespace fti
