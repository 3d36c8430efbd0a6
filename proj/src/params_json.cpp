#include "hybrid_cycle/params_json.hpp"

#include "hybrid_cycle/errors.hpp"

#include <string>

namespace hybrid_cycle {

namespace {

double number(const nlohmann::json& block, const char* key) {
    auto it = block.find(key);
    if (it == block.end()) throw ValidationError(key, "missing");
    if (!it->is_number()) throw ValidationError(key, "must be a number");
    return it->get<double>();
}

double number_or(const nlohmann::json& block, const char* key, double fallback) {
    return block.contains(key) ? number(block, key) : fallback;
}

} // namespace

LoadedParams params_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("config", "must be a JSON object");
    const bool has_raw = doc.contains("raw");
    const bool has_norm = doc.contains("normalized");
    if (has_raw == has_norm)
        throw ValidationError("config", "exactly one of 'raw' or 'normalized' is required");

    if (has_raw) {
        const auto& b = doc.at("raw");
        RawParams raw;
        raw.a = number(b, "a");
        raw.b = number(b, "b");
        raw.q = number(b, "q");
        raw.xi = number(b, "xi");
        raw.delta1 = number(b, "delta1");
        raw.delta2 = number(b, "delta2");
        raw.r = number(b, "r");
        raw.z0 = number_or(b, "z0", 0.0);
        raw.alpha = number(b, "alpha");
        raw.T = number_or(b, "T", 1.0);
        return {normalize(raw), raw};
    }

    const auto& b = doc.at("normalized");
    return {make_params(number(b, "beta"), number(b, "delta1"), number(b, "delta2"),
                        number(b, "r"), number(b, "t_s"), number_or(b, "T", 1.0),
                        number_or(b, "x0", 0.0)),
            std::nullopt};
}

nlohmann::json to_json(const ModelParams& p) {
    return {{"beta", p.beta}, {"delta1", p.delta1}, {"delta2", p.delta2}, {"r", p.r},
            {"t_s", p.t_s},   {"T", p.T},           {"x0", p.x0},         {"rho1", p.rho1()},
            {"rho2", p.rho2()}};
}

nlohmann::json to_json(const RawParams& p) {
    return {{"a", p.a},   {"b", p.b},         {"q", p.q},         {"xi", p.xi},
            {"delta1", p.delta1}, {"delta2", p.delta2}, {"r", p.r}, {"z0", p.z0},
            {"alpha", p.alpha},   {"T", p.T}};
}

} // namespace hybrid_cycle
