#include "fti/fuzzy_graph.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include <json.hpp>

#include "fti/errors.hpp"

namespace fti {

double edge_probability(double distance, double sigma) {
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  if (distance < 0.0) throw InputError("distance must be nonnegative");
  return std::exp(-distance / sigma);
}

double membership_sum(std::span<const double> distances, double sigma) {
  double sum = 0.0;
  for (const double d : distances) sum += std::exp(-d / sigma);
  return sum;
}

namespace {

// Sum and d/dsigma of sum_j exp(-d_j / sigma) in one pass.
std::pair<double, double> sum_and_slope(std::span<const double> distances,
                                        double sigma) {
  double sum = 0.0, slope = 0.0;
  for (const double d : distances) {
    const double e = std::exp(-d / sigma);
    sum += e;
    slope += d * e;
  }
  return {sum, slope / (sigma * sigma)};
}

}  // namespace

SigmaSolution solve_sigma(std::span<const double> distances, double target,
                          const SolverOptions& options) {
  if (distances.empty()) throw InputError("solve_sigma: empty distance list");
  const double k = static_cast<double>(distances.size());
  if (!(target > 0.0) || !(target < k)) {
    throw InputError("solve_sigma: target " + std::to_string(target) +
                     " outside (0, " + std::to_string(distances.size()) + ")");
  }

  double lo = kSigmaMin;
  // Zero distances contribute exp(0) = 1 at every sigma, so enough of them
  // put the sum above the target before sigma can shrink any further.
  if (membership_sum(distances, lo) >= target) return {kSigmaMin, true};

  double max_d = 0.0, mean_d = 0.0;
  for (const double d : distances) {
    max_d = std::max(max_d, d);
    mean_d += d;
  }
  mean_d /= k;
  double hi = std::max(max_d * 64.0, kSigmaMin * 2.0);
  while (membership_sum(distances, hi) <= target) {
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw NumericalError("solve_sigma: cannot bracket the root");
    }
  }

  // Bisection on [lo, hi], taking a Newton step instead of the midpoint
  // whenever it lands strictly inside the bracket. The bracket shrinks every
  // iteration either way. The start point is exact when all distances are
  // equal: k * exp(-d / sigma) = target.
  constexpr double kConverged = 1e-14;
  double sigma = std::clamp(mean_d / std::log(k / target), lo, hi);
  if (!(sigma > lo && sigma < hi)) sigma = 0.5 * (lo + hi);
  double residual = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const auto [sum, slope] = sum_and_slope(distances, sigma);
    residual = sum - target;
    if (std::abs(residual) <= kConverged * target) break;
    if (residual > 0.0) {
      hi = sigma;
    } else {
      lo = sigma;
    }
    double next = slope > 0.0 ? sigma - residual / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next <= lo || next >= hi) break;  // bracket exhausted
    sigma = next;
  }

  residual = std::abs(membership_sum(distances, sigma) - target);
  if (!(residual <= options.tolerance)) {
    throw NumericalError("solve_sigma: residual " + std::to_string(residual) +
                         " exceeds tolerance " +
                         std::to_string(options.tolerance));
  }
  return {sigma, false};
}

FuzzyGraph::FuzzyGraph(std::size_t k, double target, SolverOptions solver,
                       std::vector<double> sigmas,
                       std::vector<std::uint8_t> degenerate,
                       std::vector<FuzzyEdge> edges)
    : k_(k),
      target_(target),
      solver_(solver),
      sigmas_(std::move(sigmas)),
      degenerate_(std::move(degenerate)),
      edges_(std::move(edges)),
      row_mass_(sigmas_.size(), 0.0) {
  for (std::size_t i = 0; i < sigmas_.size(); ++i) {
    double mass = 0.0;
    for (const FuzzyEdge& e : this->edges(i)) mass += e.probability;
    row_mass_[i] = mass;
    total_mass_ += mass;
  }
}

std::size_t FuzzyGraph::degenerate_count() const {
  return static_cast<std::size_t>(
      std::count(degenerate_.begin(), degenerate_.end(), std::uint8_t{1}));
}

FuzzyGraph build_fuzzy_graph(const NeighborLists& lists,
                             const GraphOptions& options) {
  const std::size_t k = lists.k();
  const std::size_t n = lists.size();
  const double target = options.target.value_or(std::log2(static_cast<double>(k)));

  std::vector<double> sigmas(n);
  std::vector<std::uint8_t> degenerate(n);
  std::vector<FuzzyEdge> edges(n * k);

  // Exceptions may not escape an OpenMP region; keep the first one.
  std::exception_ptr failure;
#pragma omp parallel
  {
    std::vector<double> distances(k);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      try {
        const auto row = lists.of(i);
        for (std::size_t j = 0; j < k; ++j) distances[j] = row[j].distance;
        const SigmaSolution s = solve_sigma(distances, target, options.solver);
        sigmas[i] = s.sigma;
        degenerate[i] = s.degenerate ? 1 : 0;
        for (std::size_t j = 0; j < k; ++j) {
          edges[i * k + j] = {row[j].index, row[j].distance,
                              std::exp(-row[j].distance / s.sigma)};
        }
      } catch (...) {
#pragma omp critical(fti_graph_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  return FuzzyGraph(k, target, options.solver, std::move(sigmas),
                    std::move(degenerate), std::move(edges));
}

FuzzyGraph build_fuzzy_graph(const EmbeddingSet& set, std::size_t k,
                             const GraphOptions& options) {
  return build_fuzzy_graph(knn(set, k), options);
}

double mean_probability(const FuzzyGraph& graph) {
  return graph.total_mass() / static_cast<double>(graph.size() * graph.k());
}

void write_graph_jsonl(std::ostream& out, const FuzzyGraph& graph) {
  for (std::size_t i = 0; i < graph.size(); ++i) {
    nlohmann::ordered_json record;
    record["index"] = i;
    record["sigma"] = graph.sigma(i);
    record["degenerate"] = graph.degenerate(i);
    auto edges = nlohmann::ordered_json::array();
    for (const FuzzyEdge& e : graph.edges(i)) {
      edges.push_back({{"to", e.to}, {"distance", e.distance},
                       {"probability", e.probability}});
    }
    record["edges"] = std::move(edges);
    out << record.dump() << '\n';
  }
}

}  // namespace fti
