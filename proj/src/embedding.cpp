#include "fti/embedding.hpp"

#include <cmath>
#include <string>

#include "fti/errors.hpp"

namespace fti {

EmbeddingSet::EmbeddingSet(std::vector<double> values, std::size_t dim)
    : values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) throw InputError("embedding dimension must be at least 1");
  if (values_.empty()) throw InputError("no rows");
  if (values_.size() % dim_ != 0) {
    throw InputError("value count " + std::to_string(values_.size()) +
                     " is not a multiple of dimension " + std::to_string(dim_));
  }
  size_ = values_.size() / dim_;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError("non-finite value in row " + std::to_string(i / dim_) +
                       ", column " + std::to_string(i % dim_));
    }
  }
}

EmbeddingSet EmbeddingSet::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InputError("no rows");
  const std::size_t dim = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw ShapeError("row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " columns, expected " +
                       std::to_string(dim));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return EmbeddingSet(std::move(values), dim);
}

EmbeddingSet EmbeddingSet::concat(const EmbeddingSet& a,
                                  const EmbeddingSet& b) {
  if (a.dim() != b.dim()) {
    throw ShapeError("cannot concatenate sets of dimension " +
                     std::to_string(a.dim()) + " and " +
                     std::to_string(b.dim()));
  }
  std::vector<double> values(a.values_.begin(), a.values_.end());
  values.insert(values.end(), b.values_.begin(), b.values_.end());
  return EmbeddingSet(std::move(values), a.dim());
}

}  // namespace fti
