#include "fti/experiments.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "fti/errors.hpp"
#include "fti/knn.hpp"

namespace fti {
namespace {

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// Everything that depends only on the real set is built once per experiment.
struct RealSide {
  const EmbeddingSet& set;
  NeighborLists lists;
  FuzzyGraph graph;
  HypersphereCover cover;

  RealSide(const EmbeddingSet& real, const ExperimentOptions& o)
      : set(real), lists(knn(real, o.k)), graph(build_fuzzy_graph(lists, o.graph)),
        cover(o.impar_k == o.k ? HypersphereCover(real, lists)
                               : HypersphereCover(real, o.impar_k)) {}
};

struct Row {
  double quality, diversity, precision, recall;
};

Row evaluate(const RealSide& real, const EmbeddingSet& fake,
             const ExperimentOptions& o) {
  Row row{};
  row.quality = fti(real.graph, real.set, fake, o.normalization).fti;
  const NeighborLists fake_lists = knn(fake, o.k);
  const FuzzyGraph fake_graph = build_fuzzy_graph(fake_lists, o.graph);
  row.diversity = fti(fake_graph, fake, real.set, o.normalization).fti;
  row.precision = real.cover.coverage(fake);
  const HypersphereCover fake_cover =
      o.impar_k == o.k ? HypersphereCover(fake, fake_lists)
                       : HypersphereCover(fake, o.impar_k);
  row.recall = fake_cover.coverage(real.set);
  return row;
}

ExperimentCurve make_curve(std::string name, std::size_t anchor,
                           Normalization normalization) {
  ExperimentCurve curve;
  curve.experiment = std::move(name);
  curve.anchor = anchor;
  curve.fti_normalization = normalization;
  for (const char* s : {kQuality, kDiversity, kPrecision, kRecall}) {
    curve.series.push_back({s, {}});
  }
  return curve;
}

void append(ExperimentCurve& curve, std::string label, const Row& row) {
  curve.x_labels.push_back(std::move(label));
  curve.series[0].values.push_back(row.quality);
  curve.series[1].values.push_back(row.diversity);
  curve.series[2].values.push_back(row.precision);
  curve.series[3].values.push_back(row.recall);
}

std::size_t half_modes(const GaussianMixtureSpec& spec) {
  validate(spec);
  const std::size_t m = spec.modes.size();
  if (m < 4 || m % 2 != 0) {
    throw InputError("mode experiments need an even number of modes >= 4, got " +
                     std::to_string(m));
  }
  return m / 2;
}

}  // namespace

const std::vector<double>& ExperimentCurve::values(const std::string& name) const {
  for (const NamedSeries& s : series) {
    if (s.name == name) return s.values;
  }
  throw InputError("no series named '" + name + "'");
}

std::vector<double> ExperimentCurve::ratios(const std::string& name) const {
  const std::vector<double>& v = values(name);
  const double base = v.at(anchor);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = base == 0.0 ? std::numeric_limits<double>::quiet_NaN() : v[i] / base;
  }
  return out;
}

std::vector<double> default_noise_levels() {
  return {0.0, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4};
}

ExperimentCurve noise_experiment(const EmbeddingSet& real,
                                 const EmbeddingSet& base,
                                 const std::vector<double>& noise_levels,
                                 std::uint64_t seed,
                                 const ExperimentOptions& options) {
  if (noise_levels.empty() || noise_levels.front() != 0.0) {
    throw InputError("noise levels must start at 0 (the anchor)");
  }
  if (real.dim() != base.dim()) {
    throw ShapeError("real and base sets differ in dimension");
  }
  const RealSide real_side(real, options);
  ExperimentCurve curve = make_curve("noise", 0, options.normalization);

  for (std::size_t level = 0; level < noise_levels.size(); ++level) {
    const double stddev = noise_levels[level];
    if (stddev < 0.0) throw InputError("noise levels must be nonnegative");
    std::vector<double> values(base.values().begin(), base.values().end());
    if (stddev > 0.0) {
      Rng rng = Rng::stream(seed, 3, level);
      for (double& v : values) v += stddev * rng.normal();
    }
    const EmbeddingSet fake(std::move(values), base.dim());
    append(curve, format_number(stddev), evaluate(real_side, fake, options));
  }
  return curve;
}

ExperimentCurve mode_drop_experiment(const GaussianMixtureSpec& spec,
                                     const ExperimentOptions& options) {
  const std::size_t half = half_modes(spec);
  const EmbeddingSet real = generate_modes(spec, 0, half, SampleStream::kTrain);
  const RealSide real_side(real, options);
  ExperimentCurve curve = make_curve("mode-drop", 0, options.normalization);
  for (std::size_t w = 0; w <= half; ++w) {
    const EmbeddingSet fake =
        generate_modes(spec, w, w + half, SampleStream::kTest);
    append(curve, std::to_string(w), evaluate(real_side, fake, options));
  }
  return curve;
}

ExperimentCurve mode_invent_experiment(const GaussianMixtureSpec& spec,
                                       ExperimentOptions options) {
  const std::size_t half = half_modes(spec);
  // The generated set changes size, so FTI is reported per sample.
  options.normalization = Normalization::kUnnormalized;
  const EmbeddingSet real = generate_modes(spec, 0, half, SampleStream::kTrain);
  const RealSide real_side(real, options);
  ExperimentCurve curve = make_curve("mode-invent", half - 1, options.normalization);
  for (std::size_t m = 1; m <= spec.modes.size(); ++m) {
    const EmbeddingSet fake = generate_modes(spec, 0, m, SampleStream::kTest);
    append(curve, "0-" + std::to_string(m - 1), evaluate(real_side, fake, options));
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const ExperimentCurve& curve) {
  out << "x_label";
  for (const NamedSeries& s : curve.series) out << ',' << s.name;
  for (const NamedSeries& s : curve.series) out << ',' << s.name << "_ratio";
  out << '\n';
  std::vector<std::vector<double>> ratios;
  for (const NamedSeries& s : curve.series) ratios.push_back(curve.ratios(s.name));
  for (std::size_t i = 0; i < curve.x_labels.size(); ++i) {
    out << curve.x_labels[i];
    for (const NamedSeries& s : curve.series) out << ',' << format_number(s.values[i]);
    for (const auto& r : ratios) out << ',' << format_number(r[i]);
    out << '\n';
  }
}

}  // namespace fti
