#pragma once

// Internal: JSON encoding of reports, shared by dataset_io and experiments.

#include <json.hpp>

#include "relscore/dataset_io.hpp"

namespace relscore::detail {

nlohmann::ordered_json report_to_json_value(const EvaluationReport& report);
EvaluationReport report_from_json_value(const nlohmann::ordered_json& j);

}  // namespace relscore::detail
