#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "fti/embedding.hpp"
#include "fti/knn.hpp"

namespace fti {

inline constexpr double kSigmaTol = 1e-5;
inline constexpr double kSigmaMin = 1e-12;
inline constexpr int kSigmaMaxIterations = 100;

struct SolverOptions {
  double tolerance = kSigmaTol;        // max |sum - target| accepted
  int max_iterations = kSigmaMaxIterations;
};

struct SigmaSolution {
  double sigma;
  // Set when the zero-distance entries alone reach the target; sigma is then
  // kSigmaMin and the achieved sum exceeds the target.
  bool degenerate;
};

// exp(-distance / sigma). Throws InputError when sigma <= 0 or distance < 0.
double edge_probability(double distance, double sigma);

// Sum of exp(-d/sigma) over `distances`.
double membership_sum(std::span<const double> distances, double sigma);

// Root of sum_j exp(-d_j/sigma) = target by bracketed search. The bracket
// starts at [kSigmaMin, 64 * max(d)] and the upper end doubles until the sum
// exceeds the target; each iteration then takes a Newton step if it stays
// inside the bracket and bisects otherwise. Iteration stops near machine
// precision or after options.max_iterations, and the final residual must be
// within options.tolerance, else NumericalError.
SigmaSolution solve_sigma(std::span<const double> distances, double target,
                          const SolverOptions& options = {});

struct GraphOptions {
  SolverOptions solver;
  std::optional<double> target;  // defaults to log2(k)
};

struct FuzzyEdge {
  std::uint32_t to;
  double distance;
  double probability;
};

// Directed, weighted k-NN graph with local connectivity 0 and no
// symmetrization. Immutable once built.
class FuzzyGraph {
 public:
  FuzzyGraph(std::size_t k, double target, SolverOptions solver,
             std::vector<double> sigmas, std::vector<std::uint8_t> degenerate,
             std::vector<FuzzyEdge> edges);

  std::size_t k() const { return k_; }
  std::size_t size() const { return sigmas_.size(); }
  double target() const { return target_; }
  const SolverOptions& solver() const { return solver_; }

  double sigma(std::size_t i) const { return sigmas_[i]; }
  bool degenerate(std::size_t i) const { return degenerate_[i] != 0; }
  std::size_t degenerate_count() const;
  std::span<const FuzzyEdge> edges(std::size_t i) const {
    return {edges_.data() + i * k_, k_};
  }
  double radius(std::size_t i) const { return edges_[i * k_ + k_ - 1].distance; }
  // Sum of the k outgoing probabilities of point i.
  double row_mass(std::size_t i) const { return row_mass_[i]; }
  double total_mass() const { return total_mass_; }

 private:
  std::size_t k_;
  double target_;
  SolverOptions solver_;
  std::vector<double> sigmas_;
  std::vector<std::uint8_t> degenerate_;
  std::vector<FuzzyEdge> edges_;
  std::vector<double> row_mass_;
  double total_mass_ = 0.0;
};

FuzzyGraph build_fuzzy_graph(const EmbeddingSet& set, std::size_t k,
                             const GraphOptions& options = {});
FuzzyGraph build_fuzzy_graph(const NeighborLists& lists,
                             const GraphOptions& options = {});

// Average edge probability over all N*k edges.
double mean_probability(const FuzzyGraph& graph);

// One JSON object per line:
// {"index":i,"sigma":s,"degenerate":b,"edges":[{"to":j,"distance":d,"probability":p},...]}
void write_graph_jsonl(std::ostream& out, const FuzzyGraph& graph);

}  // namespace fti
