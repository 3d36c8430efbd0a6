#include "hybrid_cycle/costate.hpp"

#include <algorithm>
#include <cmath>

namespace hybrid_cycle {

namespace {

// Solution of lambda' = rho*lambda + 1 after `dt`, starting from `start`.
double propagate(double rho, double start, double dt) {
    return (start + 1.0 / rho) * std::exp(rho * dt) - 1.0 / rho;
}

} // namespace

double periodic_costate_start(const CostateRates& rates) {
    // The unit-period closed form is applied on the rescaled clock s = t/T.
    // There mu(s) = lambda(t)/T solves mu' = (rho*T)*mu + 1 with switch at
    // t_s/T, so lambda_eq = T * mu_eq. For T = 1 this is the formula as is.
    const double r1 = rates.rho1 * rates.T;
    const double r2 = rates.rho2 * rates.T;
    const double ts = rates.t_s / rates.T;
    const double e1 = std::exp(r1 * ts);
    const double e2 = std::exp(r2 * (ts - 1.0));
    const double mu = (r1 - r2 + r2 * e1 - r1 * e2) / (r1 * r2 * e2 - r1 * r2 * e1);
    return rates.T * mu;
}

double costate_at_switch(const CostateRates& rates, double start) {
    return propagate(rates.rho1, start, rates.t_s);
}

double CostateSolution::on_segment(int regime, double offset) const {
    return regime == 1 ? propagate(params.rho1(), lambda_eq, offset)
                       : propagate(params.rho2(), lambda_switch, offset);
}

double lambda_eq(const ModelParams& params) {
    return periodic_costate_start(CostateRates::from(params));
}

CostateSolution solve_costate(const ModelParams& params) {
    params.validate();
    CostateSolution sol;
    sol.params = params;
    sol.lambda_eq = lambda_eq(params);
    sol.lambda_switch = costate_at_switch(CostateRates::from(params), sol.lambda_eq);
    return sol;
}

double lambda_at(const CostateSolution& sol, double t) {
    // Reducing to the phase keeps exponents below max(rho)*T.
    const double s = sol.params.schedule().phase(t);
    return s < sol.params.t_s ? sol.on_segment(1, s) : sol.on_segment(2, s - sol.params.t_s);
}

CostateRange lambda_extrema(const CostateSolution& sol) {
    return {std::min(sol.lambda_eq, sol.lambda_switch), std::max(sol.lambda_eq, sol.lambda_switch)};
}

} // namespace hybrid_cycle
