#include "hybrid_cycle/limit_cycle.hpp"

#include "hybrid_cycle/control.hpp"
#include "hybrid_cycle/costate.hpp"
#include "hybrid_cycle/dynamics.hpp"
#include "hybrid_cycle/errors.hpp"

#include <cmath>

namespace hybrid_cycle {

namespace {

constexpr double kFixedPointTol = 1e-12;
constexpr int kMaxIterations = 200;

} // namespace

double poincare_map(const ModelParams& params, double x) {
    return flow_map(params, ControlLaw::optimal(params.beta), x, params.T);
}

double contraction_rate(const ModelParams& params) {
    return std::exp(-params.schedule().decay_per_period());
}

double contraction_bound(const ModelParams& params) {
    return std::exp(-params.delta_min() * params.T);
}

LimitCycle find_x_eq(const ModelParams& params, std::size_t samples_per_period) {
    params.validate();
    if (samples_per_period < 1) throw ValidationError("samples_per_period", "must be >= 1");

    const double intercept = poincare_map(params, 0.0);
    const double slope = poincare_map(params, 1.0) - intercept;
    double x = intercept / (1.0 - slope);

    int it = 0;
    double next = poincare_map(params, x);
    while (std::abs(next - x) >= kFixedPointTol) {
        if (++it > kMaxIterations)
            throw NumericalError("period map did not converge within 200 iterations");
        x = next;
        next = poincare_map(params, x);
    }

    LimitCycle cycle;
    cycle.x_eq = x;
    cycle.residual = std::abs(next - x);
    cycle.contraction_rate = contraction_rate(params);
    cycle.iterations = it;

    const CostateSolution sol = solve_costate(params);
    cycle.lambda_eq = sol.lambda_eq;
    const ControlLaw law = ControlLaw::optimal(params.beta);
    cycle.samples.reserve(samples_per_period + 1);
    for (std::size_t j = 0; j <= samples_per_period; ++j) {
        const double t = params.T * static_cast<double>(j) / static_cast<double>(samples_per_period);
        // at t = T the phase wraps to 0, which is the same costate value
        const double lambda = lambda_at(sol, t);
        cycle.samples.push_back({t, flow_map(params, law, x, t), optimal_control(lambda, params.beta), lambda});
    }
    return cycle;
}

std::vector<EnvelopePoint> convergence_envelope(const ModelParams& params, double x0, int k_max) {
    if (!(x0 >= 0)) throw ValidationError("x0", "must be >= 0");
    if (k_max < 1) throw ValidationError("k_max", "must be >= 1");
    const double x_eq = find_x_eq(params, 1).x_eq;
    const ControlLaw law = ControlLaw::optimal(params.beta);
    std::vector<EnvelopePoint> out;
    out.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k)
        out.push_back({k, std::abs(flow_map(params, law, x0, k * params.T) - x_eq)});
    return out;
}

CsvTable to_csv(const LimitCycle& cycle) {
    CsvTable table{{"t", "x_h", "u", "lambda"}, {}};
    table.rows.reserve(cycle.samples.size());
    for (const auto& s : cycle.samples) table.rows.push_back({s.t, s.x, s.u, s.lambda});
    return table;
}

} // namespace hybrid_cycle
