#pragma once

#include "hybrid_cycle/control.hpp"
#include "hybrid_cycle/csv.hpp"
#include "hybrid_cycle/model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace hybrid_cycle {

struct IntegratorConfig {
    double step = 1e-3;
    double horizon = 20.0;

    /// step must not exceed a quarter of the shorter regime segment.
    void validate(const ModelParams& params) const;
};

/// Sampled solution of the state equation under a feedback law.
///
/// J is the running trapezoidal accumulation of exp(-r t) * L on the same
/// grid as the state.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> lambda;
    std::vector<double> u;
    std::vector<double> L;
    std::vector<double> J;

    std::size_t size() const { return times.size(); }
};

/// u = feedback(t, x, lambda). Values outside [0,1] are clamped.
using Feedback = std::function<double(double t, double x, double lambda)>;

/// Classic RK4 on x' = beta*u - delta(t)*x. Steps are subdivided per regime
/// segment so every switching instant kT, kT + t_s is a grid point.
///
/// Kinks of the optimal control (lambda crossing -1/beta) are not located;
/// they cost local first-order accuracy only where they occur.
Trajectory integrate(const ModelParams& params, const ControlLaw& law, const IntegratorConfig& cfg);

Trajectory integrate(const ModelParams& params, const Feedback& feedback,
                     const IntegratorConfig& cfg);

/// phi(t, x0) = x0 * exp(-int_0^t delta) + f(t) for the optimal law, with
/// the forcing term f evaluated by adaptive Gauss-Kronrod quadrature of the
/// closed-form integrand. Throws UnsupportedLawError for the myopic law,
/// whose flow is not affine in x0.
double flow_map(const ModelParams& params, const ControlLaw& law, double x0, double t);

/// Linear interpolation of J. Throws std::out_of_range outside the grid.
double payoff_at(const Trajectory& traj, double t);

/// exp(-r * horizon) * sup|L| / r, the neglected part of the infinite-horizon
/// payoff if |L| stays below its observed maximum.
double tail_bound(const Trajectory& traj, double r);

/// Columns t,x,u,lambda,L,J.
CsvTable to_csv(const Trajectory& traj);

} // namespace hybrid_cycle
