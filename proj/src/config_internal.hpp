#pragma once

#include "json.hpp"

#include "dqm/experiment.hpp"

namespace dqm::detail {

/// Config loading from an already-parsed JSON document; the sweep driver uses
/// this to revalidate per-point override configs.
ExperimentConfig load_config_json(const nlohmann::json& root);

}  // namespace dqm::detail
