#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fti/embedding.hpp"
#include "fti/impact.hpp"
#include "fti/impar.hpp"
#include "fti/mixture.hpp"

namespace fti {

struct NamedSeries {
  std::string name;
  std::vector<double> values;
};

// Raw metric values per x position. `anchor` is the x index every series is
// ratio-normalized to.
struct ExperimentCurve {
  std::string experiment;
  std::vector<std::string> x_labels;
  std::vector<NamedSeries> series;
  std::size_t anchor = 0;
  Normalization fti_normalization = Normalization::kEdgeNormalized;

  const std::vector<double>& values(const std::string& name) const;
  // values / values[anchor]; the anchor maps to exactly 1.0. A zero anchor
  // yields NaN entries.
  std::vector<double> ratios(const std::string& name) const;
};

inline constexpr const char* kQuality = "fti_quality";
inline constexpr const char* kDiversity = "fti_diversity";
inline constexpr const char* kPrecision = "impar_precision";
inline constexpr const char* kRecall = "impar_recall";

struct ExperimentOptions {
  std::size_t k = 3;
  std::size_t impar_k = kImparDefaultK;
  Normalization normalization = Normalization::kEdgeNormalized;
  GraphOptions graph;
};

std::vector<double> default_noise_levels();

// Generated set = base + isotropic Gaussian noise at each level. The first
// level must be 0 and is the anchor.
ExperimentCurve noise_experiment(const EmbeddingSet& real,
                                 const EmbeddingSet& base,
                                 const std::vector<double>& noise_levels,
                                 std::uint64_t seed,
                                 const ExperimentOptions& options = {});

// Real = modes [0, M/2) from the train stream. Window w (w = 0..M/2) takes
// test-stream modes [w, w + M/2). Anchor: w = 0.
ExperimentCurve mode_drop_experiment(const GaussianMixtureSpec& spec,
                                     const ExperimentOptions& options = {});

// Real = modes [0, M/2). Generated set grows to modes [0, m) for m = 1..M.
// FTI is always unnormalized here. Anchor: m = M/2.
ExperimentCurve mode_invent_experiment(const GaussianMixtureSpec& spec,
                                       ExperimentOptions options = {});

// CSV with columns x_label, then each raw series, then each series' ratio.
void write_curve_csv(std::ostream& out, const ExperimentCurve& curve);

}  // namespace fti
