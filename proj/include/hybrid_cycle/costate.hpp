#pragma once

#include "hybrid_cycle/model.hpp"

namespace hybrid_cycle {

/// Coefficients of the adjoint equation  lambda' = rho(t)*lambda + 1  with
/// rho = rho1 on [kT, kT + t_s) and rho2 on [kT + t_s, (k+1)T).
///
/// Works directly in (rho1, rho2) so region sweeps need not invent a
/// discount rate. rho1 == rho2 is allowed here.
struct CostateRates {
    double rho1;
    double rho2;
    double t_s;
    double T = 1.0;

    static CostateRates from(const ModelParams& p) { return {p.rho1(), p.rho2(), p.t_s, p.T}; }
};

/// Start-of-period value of the unique bounded (T-periodic) adjoint solution.
double periodic_costate_start(const CostateRates& rates);

/// Value at t_s of the solution started from `start` at t = 0.
double costate_at_switch(const CostateRates& rates, double start);

/// The periodic adjoint solution, evaluated in closed form.
struct CostateSolution {
    ModelParams params;
    double lambda_eq = 0.0;      // value at every kT
    double lambda_switch = 0.0;  // value at every kT + t_s

    /// Value `offset` time units after the start of a segment of `regime`.
    double on_segment(int regime, double offset) const;
};

double lambda_eq(const ModelParams& params);

CostateSolution solve_costate(const ModelParams& params);

double lambda_at(const CostateSolution& sol, double t);

struct CostateRange {
    double lambda_min;
    double lambda_max;
};

/// The costate is monotone on each segment, so its range is spanned by the
/// two segment-start values.
CostateRange lambda_extrema(const CostateSolution& sol);

} // namespace hybrid_cycle
