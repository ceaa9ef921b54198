#include "fti/impact.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "fti/errors.hpp"
#include "fti/knn.hpp"

namespace fti {
namespace {

void check_dims(const EmbeddingSet& original, std::size_t dim) {
  if (dim != original.dim()) {
    throw ShapeError("sample dimension " + std::to_string(dim) +
                     " does not match original dimension " +
                     std::to_string(original.dim()));
  }
}

// Re-weights point i with `sample_distance` replacing its k-th neighbor.
// `scratch` must hold k entries.
PointImpact resolve_point(const FuzzyGraph& graph, std::size_t i,
                          double sample_distance, std::vector<double>& scratch) {
  const std::size_t k = graph.k();
  const auto edges = graph.edges(i);
  // Keep the list sorted: the solver's bracket only needs the maximum, but
  // sorted input is its documented precondition.
  std::size_t out = 0;
  bool placed = false;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (!placed && sample_distance < edges[j].distance) {
      scratch[out++] = sample_distance;
      placed = true;
    }
    scratch[out++] = edges[j].distance;
  }
  if (!placed) scratch[out++] = sample_distance;

  const SigmaSolution s = solve_sigma(scratch, graph.target(), graph.solver());
  double retained = 0.0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    retained += std::exp(-edges[j].distance / s.sigma);
  }
  const double old_mass = graph.row_mass(i);
  return PointImpact{
      .index = static_cast<std::uint32_t>(i),
      .sample_distance = sample_distance,
      .sigma_prime = s.sigma,
      .old_mass = old_mass,
      .retained_mass = retained,
      .sample_edge_probability = std::exp(-sample_distance / s.sigma),
      .drop = std::max(0.0, old_mass - retained),
      .degenerate = s.degenerate,
  };
}

}  // namespace

Normalization parse_normalization(std::string_view name) {
  if (name == "edge" || name == "edge_normalized") {
    return Normalization::kEdgeNormalized;
  }
  if (name == "raw" || name == "unnormalized") return Normalization::kUnnormalized;
  throw InputError("unknown normalization '" + std::string(name) +
                   "' (expected edge or raw)");
}

std::string_view to_string(Normalization n) {
  return n == Normalization::kEdgeNormalized ? "edge_normalized" : "unnormalized";
}

std::vector<PointImpact> impact_details(const FuzzyGraph& graph,
                                        const EmbeddingSet& original,
                                        Point sample) {
  check_dims(original, sample.size());
  std::vector<PointImpact> result;
  std::vector<double> scratch(graph.k());
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double r = graph.radius(i);
    const double d = l2_bounded(original.row(i).data(), sample.data(), sample.size(), r);
    if (d < r) result.push_back(resolve_point(graph, i, d, scratch));
  }
  return result;
}

SampleImpact impact_of_sample(const FuzzyGraph& graph,
                              const EmbeddingSet& original, Point sample) {
  check_dims(original, sample.size());
  SampleImpact result;
  std::vector<double> scratch(graph.k());
  const double* data = original.values().data();
  const std::size_t dim = original.dim();
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double r = graph.radius(i);
    const double d = l2_bounded(data + i * dim, sample.data(), dim, r);
    if (!(d < r)) continue;
    const PointImpact p = resolve_point(graph, i, d, scratch);
    result.drop += p.drop;
    ++result.insert_count;
    if (p.degenerate) ++result.degenerate_count;
  }
  return result;
}

ImpactReport fti(const FuzzyGraph& graph, const EmbeddingSet& original,
                 const EmbeddingSet& samples, Normalization normalization) {
  if (graph.size() != original.size()) {
    throw InputError("graph was not built from the given original set");
  }
  check_dims(original, samples.dim());
  const std::size_t m = samples.size();
  ImpactReport report;
  report.normalization = normalization;
  report.per_sample_drops.resize(m);
  report.insert_counts.resize(m);
  std::vector<std::uint32_t> degenerate(m);
  const double edges = static_cast<double>(graph.size() * graph.k());

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t s = 0; s < m; ++s) {
    try {
      const SampleImpact impact = impact_of_sample(graph, original, samples.row(s));
      report.per_sample_drops[s] = impact.drop;
      report.insert_counts[s] = impact.insert_count;
      degenerate[s] = impact.degenerate_count;
    } catch (...) {
#pragma omp critical(fti_impact_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Raw mass is accumulated in both modes so the edge-normalized value is
  // exactly the unnormalized one divided by N*k.
  double total = 0.0;
  for (std::size_t s = 0; s < m; ++s) {
    total += report.per_sample_drops[s];
    report.degenerate_resolves += degenerate[s];
  }
  report.fti = total / static_cast<double>(m);
  if (normalization == Normalization::kEdgeNormalized) {
    report.fti /= edges;
    for (double& d : report.per_sample_drops) d /= edges;
  }
  return report;
}

ImpactReport fti(const EmbeddingSet& original, const EmbeddingSet& samples,
                 std::size_t k, Normalization normalization,
                 const GraphOptions& options) {
  check_dims(original, samples.dim());
  return fti(build_fuzzy_graph(original, k, options), original, samples,
             normalization);
}

namespace {

template <typename E>
[[noreturn]] void rethrow_labeled(const E& e, const char* direction) {
  throw E(std::string(direction) + ": " + e.what());
}

ImpactReport directed_fti(const EmbeddingSet& original,
                          const EmbeddingSet& samples, std::size_t k,
                          Normalization normalization,
                          const GraphOptions& options, const char* direction,
                          std::size_t& degenerate_points) {
  try {
    const FuzzyGraph graph = build_fuzzy_graph(original, k, options);
    degenerate_points = graph.degenerate_count();
    return fti(graph, original, samples, normalization);
  } catch (const ShapeError& e) {
    rethrow_labeled(e, direction);
  } catch (const InputError& e) {
    rethrow_labeled(e, direction);
  } catch (const NumericalError& e) {
    rethrow_labeled(e, direction);
  }
}

}  // namespace

MetricReport quality_and_diversity(const EmbeddingSet& real,
                                   const EmbeddingSet& fake, std::size_t k,
                                   Normalization normalization,
                                   const GraphOptions& options) {
  if (real.dim() != fake.dim()) {
    throw ShapeError("real set has dimension " + std::to_string(real.dim()) +
                     ", fake set has dimension " + std::to_string(fake.dim()));
  }
  MetricReport report;
  report.k = k;
  report.n_real = real.size();
  report.n_fake = fake.size();
  report.normalization = normalization;
  report.sigma_tol = options.solver.tolerance;
  report.quality = directed_fti(real, fake, k, normalization, options,
                                "quality (fake samples on real graph)",
                                report.real_graph_degenerate)
                       .fti;
  report.diversity = directed_fti(fake, real, k, normalization, options,
                                  "diversity (real samples on fake graph)",
                                  report.fake_graph_degenerate)
                         .fti;
  return report;
}

}  // namespace fti
