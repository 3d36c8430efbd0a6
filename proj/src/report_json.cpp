#include "hybrid_cycle/report_json.hpp"

namespace hybrid_cycle {

nlohmann::json cycle_sidecar(const LimitCycle& cycle) {
    return {{"x_eq", cycle.x_eq},
            {"lambda_eq", cycle.lambda_eq},
            {"residual", cycle.residual},
            {"contraction_rate", cycle.contraction_rate}};
}

nlohmann::json to_json(const SustainabilityReport& report) {
    nlohmann::json j = {{"case", to_string(report.ordering)},
                        {"lhs", report.lhs},
                        {"lambda_min", report.lambda_min},
                        {"beta_max", report.beta_max},
                        {"beta", report.beta},
                        {"sustainable", report.sustainable},
                        {"lemma3", report.lemma3}};
    j["corollary"] = report.corollary ? nlohmann::json(*report.corollary) : nlohmann::json(nullptr);
    return j;
}

} // namespace hybrid_cycle
