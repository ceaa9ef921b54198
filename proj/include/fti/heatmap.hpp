#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fti/embedding.hpp"
#include "fti/fuzzy_graph.hpp"

namespace fti {

struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int resolution = 64;  // cells per axis
};

// Unnormalized impact of a hypothetical sample at every cell centre.
// Row r is y = y_min + (r + 0.5) * dy, column c is x = x_min + (c + 0.5) * dx.
struct Heatmap {
  GridSpec grid;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> drops;

  double at(std::size_t r, std::size_t c) const { return drops[r * cols + c]; }
  double x(std::size_t c) const;
  double y(std::size_t r) const;
};

// Requires 2-D points (ShapeError) and a non-empty grid (InputError).
Heatmap impact_heatmap(const EmbeddingSet& original, std::size_t k,
                       const GridSpec& grid, const GraphOptions& options = {});
Heatmap impact_heatmap(const FuzzyGraph& graph, const EmbeddingSet& original,
                       const GridSpec& grid);

// 8-bit binary PGM scaled to the maximum drop; zero stays black. The first
// image row is the highest y.
void write_pgm(std::ostream& out, const Heatmap& map);

}  // namespace fti
