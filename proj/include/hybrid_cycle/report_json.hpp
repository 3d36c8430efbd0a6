#pragma once

#include "hybrid_cycle/limit_cycle.hpp"
#include "hybrid_cycle/sustainability.hpp"

#include "json.hpp"

namespace hybrid_cycle {

/// {x_eq, lambda_eq, residual, contraction_rate}
nlohmann::json cycle_sidecar(const LimitCycle& cycle);

nlohmann::json to_json(const SustainabilityReport& report);

} // namespace hybrid_cycle
