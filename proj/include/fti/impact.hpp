#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "fti/embedding.hpp"
#include "fti/fuzzy_graph.hpp"

namespace fti {

// kEdgeNormalized divides each per-sample drop by N*k (average edge
// probability); kUnnormalized keeps the summed probability mass.
enum class Normalization { kEdgeNormalized, kUnnormalized };

// Accepts "edge", "edge_normalized", "raw", "unnormalized".
Normalization parse_normalization(std::string_view name);
std::string_view to_string(Normalization n);

// What inserting one sample does to one original point's outgoing edges.
struct PointImpact {
  std::uint32_t index;
  double sample_distance;   // d(x_i, sample)
  double sigma_prime;       // re-solved scale over retained + sample
  double old_mass;          // original row mass (all k edges)
  double retained_mass;     // k-1 retained edges under sigma_prime
  double sample_edge_probability;  // exp(-d(x_i, sample) / sigma_prime)
  double drop;              // max(0, old_mass - retained_mass)
  bool degenerate;
};

struct SampleImpact {
  double drop = 0.0;  // summed over affected points, unnormalized
  std::uint32_t insert_count = 0;
  std::uint32_t degenerate_count = 0;
};

// Per-affected-point breakdown, in ascending original index.
std::vector<PointImpact> impact_details(const FuzzyGraph& graph,
                                        const EmbeddingSet& original,
                                        Point sample);

// The sample is evaluated against the untouched graph: the evicted edge is
// always the k-th one, the k-1 retained edges are re-weighted with a fresh
// scale, and the sample's own edge is not counted.
SampleImpact impact_of_sample(const FuzzyGraph& graph,
                              const EmbeddingSet& original, Point sample);

struct ImpactReport {
  std::vector<double> per_sample_drops;  // normalized per `normalization`
  std::vector<std::uint32_t> insert_counts;
  double fti = 0.0;                      // mean of per_sample_drops
  Normalization normalization = Normalization::kEdgeNormalized;
  std::size_t degenerate_resolves = 0;
};

// Samples are processed in parallel; the mean is accumulated in sample order
// so the result is independent of scheduling.
ImpactReport fti(const FuzzyGraph& graph, const EmbeddingSet& original,
                 const EmbeddingSet& samples, Normalization normalization);
ImpactReport fti(const EmbeddingSet& original, const EmbeddingSet& samples,
                 std::size_t k, Normalization normalization,
                 const GraphOptions& options = {});

struct MetricReport {
  double quality = 0.0;
  double diversity = 0.0;
  std::size_t k = 0;
  std::size_t n_real = 0;
  std::size_t n_fake = 0;
  Normalization normalization = Normalization::kEdgeNormalized;
  double sigma_tol = kSigmaTol;
  std::size_t real_graph_degenerate = 0;
  std::size_t fake_graph_degenerate = 0;
};

// quality = FTI(real, fake), diversity = FTI(fake, real). Errors name the
// direction that failed.
MetricReport quality_and_diversity(const EmbeddingSet& real,
                                   const EmbeddingSet& fake, std::size_t k,
                                   Normalization normalization,
                                   const GraphOptions& options = {});

}  // namespace fti
