#pragma once

#include "hybrid_cycle/csv.hpp"
#include "hybrid_cycle/model.hpp"

#include <cstddef>
#include <vector>

namespace hybrid_cycle {

struct CycleSample {
    double t;
    double x;
    double u;
    double lambda;
};

/// The hybrid limit cycle x_h of the optimal policy: the trajectory started
/// at the fixed point of the period map.
struct LimitCycle {
    double x_eq = 0.0;
    double lambda_eq = 0.0;
    double residual = 0.0;          // |S(x_eq) - x_eq|
    double contraction_rate = 0.0;  // slope of S, exp(-int_0^T delta)
    int iterations = 0;             // polishing iterations after the affine solve
    std::vector<CycleSample> samples;  // one period, uniform grid, both ends included
};

/// S(x) = phi(T, x) under the optimal law.
double poincare_map(const ModelParams& params, double x);

/// exp(-(delta1*t_s + delta2*(T - t_s))), the exact slope of S.
double contraction_rate(const ModelParams& params);

/// exp(-delta_min*T), the looser rate that certifies S is a contraction.
double contraction_bound(const ModelParams& params);

/// Fixed point of S. S is affine, so slope and intercept are identified from
/// S(0) and S(1) and the linear equation is solved directly; plain iteration
/// x <- S(x) then polishes until |S(x) - x| < 1e-12 (at most 200 steps,
/// otherwise NumericalError).
LimitCycle find_x_eq(const ModelParams& params, std::size_t samples_per_period = 1000);

struct EnvelopePoint {
    int k;
    double gap;  // |phi(kT, x0) - x_eq|
};

std::vector<EnvelopePoint> convergence_envelope(const ModelParams& params, double x0, int k_max);

/// Columns t,x_h,u,lambda.
CsvTable to_csv(const LimitCycle& cycle);

} // namespace hybrid_cycle
