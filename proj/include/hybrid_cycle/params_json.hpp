#pragma once

#include "hybrid_cycle/model.hpp"

#include "json.hpp"

#include <optional>

namespace hybrid_cycle {

/// Parameters loaded from a configuration document. `raw` is present only
/// when the document used the unnormalized block.
struct LoadedParams {
    ModelParams params;
    std::optional<RawParams> raw;
};

/// Reads either a `"raw"` block (a, b, q, xi, delta1, delta2, r, z0, alpha, T)
/// or a `"normalized"` block (beta, delta1, delta2, r, t_s, T, x0). Exactly
/// one must be present. T defaults to 1 and z0/x0 to 0.
LoadedParams params_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const RawParams& p);

} // namespace hybrid_cycle
