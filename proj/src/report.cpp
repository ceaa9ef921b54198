#include "fti/report.hpp"

#include <cmath>
#include <string>

namespace fti {

nlohmann::ordered_json to_json(const MetricReport& r) {
  return {
      {"quality", r.quality},
      {"diversity", r.diversity},
      {"k", r.k},
      {"n_real", r.n_real},
      {"n_fake", r.n_fake},
      {"normalization", std::string(to_string(r.normalization))},
      {"sigma_tol", r.sigma_tol},
      {"degenerate_point_counts",
       {{"real_graph", r.real_graph_degenerate},
        {"fake_graph", r.fake_graph_degenerate}}},
  };
}

nlohmann::ordered_json to_json(const PrecisionRecall& pr) {
  return {{"precision", pr.precision}, {"recall", pr.recall}, {"k", pr.k}};
}

nlohmann::ordered_json to_json(const ExperimentCurve& curve) {
  nlohmann::ordered_json j;
  j["experiment"] = curve.experiment;
  j["fti_normalization"] = std::string(to_string(curve.fti_normalization));
  j["anchor"] = curve.anchor;
  j["x_labels"] = curve.x_labels;
  auto series = nlohmann::ordered_json::object();
  auto ratios = nlohmann::ordered_json::object();
  for (const NamedSeries& s : curve.series) {
    series[s.name] = s.values;
    auto r = nlohmann::ordered_json::array();
    // NaN ratios (zero anchor) become null.
    for (const double v : curve.ratios(s.name)) {
      r.push_back(std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json());
    }
    ratios[s.name] = std::move(r);
  }
  j["series"] = std::move(series);
  j["ratios"] = std::move(ratios);
  return j;
}

}  // namespace fti
