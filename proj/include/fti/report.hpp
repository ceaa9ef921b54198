#pragma once

#include <json.hpp>

#include "fti/experiments.hpp"
#include "fti/heatmap.hpp"
#include "fti/impact.hpp"
#include "fti/impar.hpp"

namespace fti {

nlohmann::ordered_json to_json(const MetricReport& report);
nlohmann::ordered_json to_json(const PrecisionRecall& pr);
nlohmann::ordered_json to_json(const ExperimentCurve& curve);

}  // namespace fti
