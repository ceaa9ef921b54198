#include "fti/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "fti/errors.hpp"
#include "fti/impact.hpp"

namespace fti {
namespace {

void validate_grid(const GridSpec& g) {
  if (g.resolution <= 0) {
    throw InputError("heatmap resolution must be positive, got " +
                     std::to_string(g.resolution));
  }
  if (!(g.x_max > g.x_min) || !(g.y_max > g.y_min) || !std::isfinite(g.x_min) ||
      !std::isfinite(g.x_max) || !std::isfinite(g.y_min) || !std::isfinite(g.y_max)) {
    throw InputError("heatmap grid range is empty");
  }
}

}  // namespace

double Heatmap::x(std::size_t c) const {
  return grid.x_min + (static_cast<double>(c) + 0.5) * (grid.x_max - grid.x_min) /
                          static_cast<double>(cols);
}

double Heatmap::y(std::size_t r) const {
  return grid.y_min + (static_cast<double>(r) + 0.5) * (grid.y_max - grid.y_min) /
                          static_cast<double>(rows);
}

Heatmap impact_heatmap(const FuzzyGraph& graph, const EmbeddingSet& original,
                       const GridSpec& grid) {
  if (original.dim() != 2) {
    throw ShapeError("heatmap needs 2-D points, got dimension " +
                     std::to_string(original.dim()));
  }
  validate_grid(grid);
  Heatmap map;
  map.grid = grid;
  map.rows = map.cols = static_cast<std::size_t>(grid.resolution);
  map.drops.resize(map.rows * map.cols);
  const std::size_t cells = map.drops.size();

#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t r = cell / map.cols;
    const std::size_t c = cell % map.cols;
    const double point[2] = {map.x(c), map.y(r)};
    map.drops[cell] = impact_of_sample(graph, original, Point(point, 2)).drop;
  }
  return map;
}

Heatmap impact_heatmap(const EmbeddingSet& original, std::size_t k,
                       const GridSpec& grid, const GraphOptions& options) {
  if (original.dim() != 2) {
    throw ShapeError("heatmap needs 2-D points, got dimension " +
                     std::to_string(original.dim()));
  }
  validate_grid(grid);
  return impact_heatmap(build_fuzzy_graph(original, k, options), original, grid);
}

void write_pgm(std::ostream& out, const Heatmap& map) {
  const double peak =
      map.drops.empty() ? 0.0 : *std::max_element(map.drops.begin(), map.drops.end());
  out << "P5\n" << map.cols << ' ' << map.rows << "\n255\n";
  std::string line(map.cols, '\0');
  for (std::size_t r = map.rows; r-- > 0;) {
    for (std::size_t c = 0; c < map.cols; ++c) {
      const double v = map.at(r, c);
      int level = 0;
      if (v > 0.0 && peak > 0.0) {
        level = std::clamp(static_cast<int>(std::lround(255.0 * v / peak)), 1, 255);
      }
      line[c] = static_cast<char>(level);
    }
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

}  // namespace fti
