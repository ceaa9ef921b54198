#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fti::oracle {
namespace {

constexpr double kGridMin = 1e-12;
constexpr double kGridMax = 1e6;
constexpr std::size_t kGridNodes = 1'000'000;
constexpr std::size_t kCoarseStride = 1'000;

double grid_node(std::size_t g) {
  const double lmin = std::log(kGridMin);
  const double lmax = std::log(kGridMax);
  return std::exp(lmin + (lmax - lmin) * static_cast<double>(g) /
                             static_cast<double>(kGridNodes - 1));
}

double f(std::span<const double> distances, double sigma) {
  double s = 0.0;
  for (std::size_t j = 0; j < distances.size(); ++j) {
    s += std::exp(-distances[j] / sigma);
  }
  return s;
}

}  // namespace

double distance(Point a, Point b) {
  if (a.size() != b.size()) throw std::invalid_argument("oracle: dim mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

OracleSigma oracle_sigma(std::span<const double> distances, double target) {
  if (distances.empty()) throw std::invalid_argument("oracle: empty distances");
  if (!(target > 0.0) || !(target < static_cast<double>(distances.size()))) {
    throw std::invalid_argument("oracle: target out of range");
  }
  if (f(distances, grid_node(0)) >= target) return {kGridMin, true};
  if (f(distances, grid_node(kGridNodes - 1)) < target) {
    throw std::runtime_error("oracle: root above grid");
  }

  // The sum is nondecreasing in sigma, so the first coarse node at or above
  // the target bounds the first fine node that is; this visits the same cell
  // a node-by-node scan of all 10^6 nodes would.
  std::size_t coarse = 0;
  while (coarse < kGridNodes - 1 && f(distances, grid_node(coarse)) < target) {
    coarse = std::min(kGridNodes - 1, coarse + kCoarseStride);
  }
  std::size_t g = coarse >= kCoarseStride ? coarse - kCoarseStride + 1 : 1;
  while (f(distances, grid_node(g)) < target) ++g;

  // Illinois false position on [grid(g-1), grid(g)].
  double a = grid_node(g - 1), b = grid_node(g);
  double fa = f(distances, a) - target, fb = f(distances, b) - target;
  if (fb == 0.0) return {b, false};
  int side = 0;
  double c = b;
  for (int it = 0; it < 200; ++it) {
    c = (a * fb - b * fa) / (fb - fa);
    const double fc = f(distances, c) - target;
    if (fc == 0.0 || std::abs(b - a) <= 1e-15 * std::abs(c)) break;
    if ((fc > 0.0) == (fb > 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    if (std::abs(fc) <= 1e-14) break;
  }
  return {c, false};
}

std::vector<std::vector<OracleNeighbor>> oracle_knn(const EmbeddingSet& set,
                                                    std::size_t k) {
  const std::size_t n = set.size();
  if (k < 2 || k + 1 > n) throw std::invalid_argument("oracle: bad k");
  std::vector<std::vector<OracleNeighbor>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<OracleNeighbor> all;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        all.push_back({static_cast<std::uint32_t>(j), distance(set.row(i), set.row(j))});
      }
    }
    std::sort(all.begin(), all.end(), [](const OracleNeighbor& a, const OracleNeighbor& b) {
      if (a.distance != b.distance) return a.distance < b.distance;
      return a.index < b.index;
    });
    all.resize(k);
    out[i] = std::move(all);
  }
  return out;
}

OracleGraph oracle_graph(const EmbeddingSet& set, std::size_t k) {
  OracleGraph g;
  g.k = k;
  g.target = std::log2(static_cast<double>(k));
  g.neighbors = oracle_knn(set, k);
  for (const auto& row : g.neighbors) {
    std::vector<double> d;
    for (const auto& nb : row) d.push_back(nb.distance);
    const OracleSigma s = oracle_sigma(d, g.target);
    g.sigmas.push_back(s.sigma);
    std::vector<double> w;
    for (const double x : d) w.push_back(std::exp(-x / s.sigma));
    g.weights.push_back(std::move(w));
  }
  return g;
}

OracleSampleResult oracle_sample(const OracleGraph& graph,
                                 const EmbeddingSet& original, Point sample) {
  const std::size_t n = original.size();
  const std::size_t k = graph.k;
  OracleSampleResult result;
  std::vector<std::vector<double>> table = graph.weights;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = distance(original.row(i), sample);
    if (!(graph.neighbors[i][k - 1].distance > d)) continue;
    table[i][k - 1] = 0.0;
    std::vector<double> dists;
    for (std::size_t j = 0; j + 1 < k; ++j) dists.push_back(graph.neighbors[i][j].distance);
    dists.push_back(d);
    std::sort(dists.begin(), dists.end());
    const OracleSigma s = oracle_sigma(dists, graph.target);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      table[i][j] = std::exp(-graph.neighbors[i][j].distance / s.sigma);
    }
    result.affected.push_back({static_cast<std::uint32_t>(i), d, s.sigma, s.degenerate});
  }
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      before += graph.weights[i][j];
      after += table[i][j];
    }
  }
  const double edges = static_cast<double>(n * k);
  result.unnormalized_drop = before - after;
  result.normalized_drop = before / edges - after / edges;
  return result;
}

OracleFti oracle_fti(const EmbeddingSet& original, const EmbeddingSet& samples,
                     std::size_t k) {
  const OracleGraph graph = oracle_graph(original, k);
  OracleFti out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    out.samples.push_back(oracle_sample(graph, original, samples.row(s)));
    out.unnormalized += out.samples.back().unnormalized_drop;
    out.edge_normalized += out.samples.back().normalized_drop;
  }
  out.unnormalized /= static_cast<double>(samples.size());
  out.edge_normalized /= static_cast<double>(samples.size());
  return out;
}

double oracle_coverage(const EmbeddingSet& centers, const EmbeddingSet& queries,
                       std::size_t k) {
  const auto lists = oracle_knn(centers, k);
  std::size_t inside = 0;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (distance(queries.row(q), centers.row(c)) <= lists[c][k - 1].distance) {
        ++inside;
        break;
      }
    }
  }
  return static_cast<double>(inside) / static_cast<double>(queries.size());
}

}  // namespace fti::oracle
