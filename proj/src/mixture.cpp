#include "fti/mixture.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fti/errors.hpp"

namespace fti {

Rng Rng::stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void validate(const GaussianMixtureSpec& spec) {
  if (spec.dim == 0) throw InputError("mixture dimension must be at least 1");
  if (spec.modes.empty()) throw InputError("mixture needs at least one mode");
  for (std::size_t m = 0; m < spec.modes.size(); ++m) {
    const MixtureMode& mode = spec.modes[m];
    if (mode.mean.size() != spec.dim) {
      throw ShapeError("mode " + std::to_string(m) + " mean has dimension " +
                       std::to_string(mode.mean.size()));
    }
    if (!(mode.stddev > 0.0)) {
      throw InputError("mode " + std::to_string(m) + " stddev must be positive");
    }
    if (mode.count == 0) {
      throw InputError("mode " + std::to_string(m) + " count must be at least 1");
    }
  }
}

EmbeddingSet generate_modes(const GaussianMixtureSpec& spec, std::size_t first,
                            std::size_t last, SampleStream stream) {
  validate(spec);
  if (first >= last || last > spec.modes.size()) {
    throw InputError("mode range [" + std::to_string(first) + ", " +
                     std::to_string(last) + ") invalid for " +
                     std::to_string(spec.modes.size()) + " modes");
  }
  std::vector<double> values;
  for (std::size_t m = first; m < last; ++m) {
    const MixtureMode& mode = spec.modes[m];
    Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(stream), m);
    for (std::size_t s = 0; s < mode.count; ++s) {
      for (std::size_t d = 0; d < spec.dim; ++d) {
        values.push_back(mode.mean[d] + mode.stddev * rng.normal());
      }
    }
  }
  return EmbeddingSet(std::move(values), spec.dim);
}

EmbeddingSet generate_mixture(const GaussianMixtureSpec& spec,
                              SampleStream stream) {
  return generate_modes(spec, 0, spec.modes.size(), stream);
}

GaussianMixtureSpec default_mixture(std::uint64_t seed,
                                    const MixtureDefaults& d) {
  if (d.modes > d.dim) {
    throw InputError("need modes <= dim for orthogonal mode means");
  }
  // Gram-Schmidt on Gaussian vectors; stream 2 is reserved for the means.
  Rng rng = Rng::stream(seed, 2);
  std::vector<std::vector<double>> basis;
  while (basis.size() < d.modes) {
    std::vector<double> v(d.dim);
    for (double& x : v) x = rng.normal();
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t i = 0; i < d.dim; ++i) dot += v[i] * b[i];
      for (std::size_t i = 0; i < d.dim; ++i) v[i] -= dot * b[i];
    }
    double norm = 0.0;
    for (const double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }

  // |c*e_a - c*e_b| = c*sqrt(2) for orthonormal e_a, e_b.
  const double scale = d.spacing / std::numbers::sqrt2;
  GaussianMixtureSpec spec;
  spec.dim = d.dim;
  spec.seed = seed;
  for (auto& b : basis) {
    for (double& x : b) x *= scale;
    spec.modes.push_back({std::move(b), d.stddev, d.per_mode});
  }
  return spec;
}

}  // namespace fti
