#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "fti/embedding.hpp"

namespace fti {

// mt19937_64 with a hand-rolled Box-Muller normal so draws are identical
// across standard libraries (std::normal_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for (seed, a, b); std::seed_seq mixing is specified
  // by the standard and therefore portable.
  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

  double uniform();  // [0, 1)
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct MixtureMode {
  std::vector<double> mean;
  double stddev = 1.0;
  std::size_t count = 1;
};

struct GaussianMixtureSpec {
  std::size_t dim = 0;
  std::vector<MixtureMode> modes;
  std::uint64_t seed = 0;
};

// Which independent draw of the mixture to produce. Experiments use the
// train stream for the real set and the test stream for the generated set.
enum class SampleStream : std::uint64_t { kTrain = 0, kTest = 1 };

void validate(const GaussianMixtureSpec& spec);

// All modes, concatenated in mode order; mode m draws from
// Rng::stream(seed, stream, m) so subsets are reproducible on their own.
EmbeddingSet generate_mixture(const GaussianMixtureSpec& spec,
                              SampleStream stream = SampleStream::kTrain);
// Modes [first, last) only.
EmbeddingSet generate_modes(const GaussianMixtureSpec& spec, std::size_t first,
                            std::size_t last,
                            SampleStream stream = SampleStream::kTrain);

struct MixtureDefaults {
  std::size_t modes = 10;
  std::size_t dim = 64;
  std::size_t per_mode = 500;
  double spacing = 10.0;  // distance between any two means
  double stddev = 1.0;
};

// Means on random orthonormal directions scaled so every pair of means is
// `spacing` apart. Requires modes <= dim.
GaussianMixtureSpec default_mixture(std::uint64_t seed,
                                    const MixtureDefaults& d = {});

}  // namespace fti
