// fti: Fuzzy Topology Impact metrics, IMPAR baseline, and synthetic
// experiments over embedding files.
//
// Exit codes: 0 success, 2 input/config error, 3 data-shape error,
// 4 internal numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fti/embedding_io.hpp"
#include "fti/errors.hpp"
#include "fti/experiments.hpp"
#include "fti/fuzzy_graph.hpp"
#include "fti/heatmap.hpp"
#include "fti/impact.hpp"
#include "fti/impar.hpp"
#include "fti/mixture.hpp"
#include "fti/report.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::size_t k = 3;
  std::string normalization = "edge";
  double sigma_tol = fti::kSigmaTol;
  std::optional<double> target;  // per-point membership mass; log2(k) if unset
  std::uint64_t seed = 0;
  std::string format = "csv";
  bool header = false;
  int threads = 0;  // 0 = runtime default; not part of the fingerprint
  std::string out;

  // experiment
  std::string experiment;
  std::size_t modes = 10;
  std::size_t dim = 64;
  std::size_t per_mode = 500;
  double spacing = 10.0;
  double stddev = 1.0;
  std::vector<double> noise_levels = fti::default_noise_levels();

  // heatmap
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  int resolution = 128;
};

// Everything that influences results. Thread count is excluded because
// results do not depend on it.
Json fingerprint(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  if (!c.inputs.empty()) {
    j["inputs"] = c.inputs;
    j["format"] = c.format;
    j["header"] = c.header;
  }
  j["k"] = c.k;
  if (c.subcommand != "impar") {
    j["normalization"] = std::string(fti::to_string(fti::parse_normalization(c.normalization)));
    j["sigma_tol"] = c.sigma_tol;
    j["membership_target"] = c.target ? Json(*c.target) : Json("log2(k)");
    j["sigma_min"] = fti::kSigmaMin;
    j["sigma_max_iterations"] = fti::kSigmaMaxIterations;
  }
  j["knn_ties"] = "ascending (distance, index)";
  j["insertion_test"] = "strict d(x, sample) < k-th neighbor distance";
  if (c.subcommand == "experiment") {
    j["experiment"] = c.experiment;
    j["seed"] = c.seed;
    j["modes"] = c.modes;
    j["dim"] = c.dim;
    j["per_mode"] = c.per_mode;
    j["spacing"] = c.spacing;
    j["stddev"] = c.stddev;
    j["impar_k"] = fti::kImparDefaultK;
    if (c.experiment == "noise") j["noise_levels"] = c.noise_levels;
  }
  if (c.subcommand == "heatmap") {
    j["grid"] = {{"x_min", c.x_min}, {"x_max", c.x_max}, {"y_min", c.y_min},
                 {"y_max", c.y_max}, {"resolution", c.resolution}};
  }
  return j;
}

fti::GraphOptions graph_options(const RunConfig& c) {
  fti::GraphOptions o;
  o.solver.tolerance = c.sigma_tol;
  o.target = c.target;
  return o;
}

fti::EmbeddingSet load(const RunConfig& c, const std::string& path) {
  return fti::load_embeddings(
      path, {.format = fti::parse_file_format(c.format), .skip_header = c.header});
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fti::InputError(path.string() + ": cannot open for writing");
  return out;
}

void emit_json(const RunConfig& c, const Json& j) {
  if (c.out.empty() || c.out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    open_out(c.out) << j.dump(2) << '\n';
  }
}

void require_out(const RunConfig& c) {
  if (c.out.empty()) throw fti::InputError("--out is required for " + c.subcommand);
}

void run_fti(const RunConfig& c) {
  const fti::EmbeddingSet real = load(c, c.inputs.at(0));
  const fti::EmbeddingSet fake = load(c, c.inputs.at(1));
  const fti::MetricReport report = fti::quality_and_diversity(
      real, fake, c.k, fti::parse_normalization(c.normalization), graph_options(c));
  Json j = fti::to_json(report);
  j["config"] = fingerprint(c);
  emit_json(c, j);
}

void run_impar(const RunConfig& c) {
  const fti::EmbeddingSet real = load(c, c.inputs.at(0));
  const fti::EmbeddingSet fake = load(c, c.inputs.at(1));
  Json j = fti::to_json(fti::impar_precision_recall(real, fake, c.k));
  j["config"] = fingerprint(c);
  emit_json(c, j);
}

void run_graph(const RunConfig& c) {
  const fti::EmbeddingSet points = load(c, c.inputs.at(0));
  const fti::FuzzyGraph graph = fti::build_fuzzy_graph(points, c.k, graph_options(c));
  if (c.out.empty() || c.out == "-") {
    fti::write_graph_jsonl(std::cout, graph);
  } else {
    std::ofstream out = open_out(c.out);
    fti::write_graph_jsonl(out, graph);
  }
}

void run_experiment(const RunConfig& c) {
  require_out(c);
  fti::MixtureDefaults defaults{.modes = c.modes,
                                .dim = c.dim,
                                .per_mode = c.per_mode,
                                .spacing = c.spacing,
                                .stddev = c.stddev};
  const fti::GaussianMixtureSpec spec = fti::default_mixture(c.seed, defaults);
  fti::ExperimentOptions options;
  options.k = c.k;
  options.normalization = fti::parse_normalization(c.normalization);
  options.graph = graph_options(c);

  fti::ExperimentCurve curve;
  if (c.experiment == "noise") {
    const fti::EmbeddingSet real = fti::generate_mixture(spec, fti::SampleStream::kTrain);
    const fti::EmbeddingSet base = fti::generate_mixture(spec, fti::SampleStream::kTest);
    curve = fti::noise_experiment(real, base, c.noise_levels, c.seed, options);
  } else if (c.experiment == "mode-drop") {
    curve = fti::mode_drop_experiment(spec, options);
  } else if (c.experiment == "mode-invent") {
    curve = fti::mode_invent_experiment(spec, options);
  } else {
    throw fti::InputError("unknown experiment '" + c.experiment + "'");
  }

  std::ofstream csv = open_out(c.out + ".csv");
  fti::write_curve_csv(csv, curve);
  Json j = fti::to_json(curve);
  j["config"] = fingerprint(c);
  open_out(c.out + ".json") << j.dump(2) << '\n';
}

void run_heatmap(const RunConfig& c) {
  require_out(c);
  const fti::EmbeddingSet points = load(c, c.inputs.at(0));
  const fti::GridSpec grid{c.x_min, c.x_max, c.y_min, c.y_max, c.resolution};
  const fti::Heatmap map = fti::impact_heatmap(points, c.k, grid, graph_options(c));

  std::ofstream bin = open_out(c.out + ".bin");
  fti::write_binary_matrix(bin, map.drops, map.rows, map.cols);
  std::ofstream pgm = open_out(c.out + ".pgm");
  fti::write_pgm(pgm, map);

  std::size_t nonzero = 0;
  double peak = 0.0;
  for (const double v : map.drops) {
    if (v > 0.0) ++nonzero;
    peak = std::max(peak, v);
  }
  Json j;
  j["rows"] = map.rows;
  j["cols"] = map.cols;
  j["row_axis"] = "y ascending from y_min (cell centres)";
  j["nonzero_cells"] = nonzero;
  j["max_drop"] = peak;
  j["config"] = fingerprint(c);
  open_out(c.out + ".json") << j.dump(2) << '\n';
}

void add_common(CLI::App* cmd, RunConfig& c, bool with_fti_knobs) {
  cmd->add_option("--k", c.k, "Neighbor count")->capture_default_str()->check(CLI::Range(2, 1 << 30));
  if (with_fti_knobs) {
    cmd->add_option("--normalization", c.normalization,
                    "FTI normalization: edge (divide by N*k) or raw")
        ->capture_default_str()
        ->check(CLI::IsMember({"edge", "raw", "edge_normalized", "unnormalized"}));
    cmd->add_option("--sigma-tol", c.sigma_tol, "Max residual of the scale solve")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--target", c.target,
                    "Advanced: per-point membership mass (default log2(k), must be < k)")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--threads", c.threads, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", c.out, "Output path (or prefix for multi-file outputs)");
}

void add_input_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--format", c.format, "Input format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "bin"}));
  cmd->add_flag("--header", c.header, "Skip the first CSV line");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy Topology Impact quality/diversity metrics"};
  app.require_subcommand(1);
  RunConfig c;

  auto* fti_cmd = app.add_subcommand("fti", "Quality and diversity of FAKE against REAL");
  fti_cmd->add_option("real", c.inputs, "REAL and FAKE embedding files")->expected(2)->required();
  add_common(fti_cmd, c, true);
  add_input_flags(fti_cmd, c);

  auto* impar_cmd = app.add_subcommand("impar", "IMPAR precision and recall");
  impar_cmd->add_option("real", c.inputs, "REAL and FAKE embedding files")->expected(2)->required();
  add_common(impar_cmd, c, false);
  add_input_flags(impar_cmd, c);

  auto* exp_cmd = app.add_subcommand("experiment", "Run a synthetic experiment");
  exp_cmd->add_option("name", c.experiment, "noise | mode-drop | mode-invent")
      ->required()
      ->check(CLI::IsMember({"noise", "mode-drop", "mode-invent"}));
  add_common(exp_cmd, c, true);
  exp_cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  exp_cmd->add_option("--modes", c.modes, "Mixture modes (even, >= 4)")->capture_default_str();
  exp_cmd->add_option("--dim", c.dim, "Embedding dimension")->capture_default_str();
  exp_cmd->add_option("--per-mode", c.per_mode, "Samples per mode")->capture_default_str();
  exp_cmd->add_option("--spacing", c.spacing, "Distance between mode means")->capture_default_str();
  exp_cmd->add_option("--stddev", c.stddev, "Per-mode isotropic stddev")->capture_default_str();
  exp_cmd->add_option("--noise-levels", c.noise_levels, "Noise stddevs, first must be 0")
      ->delimiter(',');

  auto* heat_cmd = app.add_subcommand("heatmap", "Impact of a new sample over a 2-D grid");
  heat_cmd->add_option("points", c.inputs, "2-D embedding file")->expected(1)->required();
  add_common(heat_cmd, c, true);
  add_input_flags(heat_cmd, c);
  heat_cmd->add_option("--x-min", c.x_min)->capture_default_str();
  heat_cmd->add_option("--x-max", c.x_max)->capture_default_str();
  heat_cmd->add_option("--y-min", c.y_min)->capture_default_str();
  heat_cmd->add_option("--y-max", c.y_max)->capture_default_str();
  heat_cmd->add_option("--resolution", c.resolution, "Cells per axis")->capture_default_str();

  auto* graph_cmd = app.add_subcommand("graph", "Dump the fuzzy k-NN graph as JSON lines");
  graph_cmd->add_option("points", c.inputs, "Embedding file")->expected(1)->required();
  add_common(graph_cmd, c, true);
  add_input_flags(graph_cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

#ifdef _OPENMP
  if (c.threads > 0) omp_set_num_threads(c.threads);
#endif

  try {
    if (*fti_cmd) {
      c.subcommand = "fti";
      run_fti(c);
    } else if (*impar_cmd) {
      c.subcommand = "impar";
      run_impar(c);
    } else if (*exp_cmd) {
      c.subcommand = "experiment";
      run_experiment(c);
    } else if (*heat_cmd) {
      c.subcommand = "heatmap";
      run_heatmap(c);
    } else if (*graph_cmd) {
      c.subcommand = "graph";
      run_graph(c);
    }
  } catch (const fti::ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const fti::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const fti::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
