#pragma once

// Test-only reference computations. Nothing here calls into the closed
// forms it is used to check.

#include "hybrid_cycle/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracle {

/// Start value of the periodic adjoint solution, from the one-period
/// affine map lambda(T) = A1*A2*lambda(0) + c and its fixed point.
inline double periodic_costate_by_fixed_point(double rho1, double rho2, double t_s, double T) {
    const double a1 = std::exp(rho1 * t_s);
    const double a2 = std::exp(rho2 * (T - t_s));
    const double c = a2 * (a1 - 1.0) / rho1 + (a2 - 1.0) / rho2;
    return c / (1.0 - a1 * a2);
}

/// Classic RK4 for a scalar ODE y' = f(t, y) over [t0, t1] with n steps.
inline double rk4(const std::function<double(double, double)>& f, double y, double t0, double t1, long n) {
    const double h = (t1 - t0) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        const double k1 = f(t, y);
        const double k2 = f(t + h / 2, y + h / 2 * k1);
        const double k3 = f(t + h / 2, y + h / 2 * k2);
        const double k4 = f(t + h, y + h * k3);
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return y;
}

/// Integrates lambda' = rho(t)*lambda + 1 numerically from lambda(0) over
/// `periods` whole periods, returning the value at each segment end through
/// `visit(t, lambda)`.
template <class Visit>
void integrate_costate(const hybrid_cycle::ModelParams& p, double lambda0, int periods, double step,
                       Visit visit) {
    double lam = lambda0;
    for (int k = 0; k < periods; ++k) {
        const double base = k * p.T;
        const double rho1 = p.r + p.delta1;
        const double rho2 = p.r + p.delta2;
        const long n1 = std::lround(p.t_s / step);
        const long n2 = std::lround((p.T - p.t_s) / step);
        lam = rk4([&](double, double y) { return rho1 * y + 1; }, lam, 0, p.t_s, std::max(1L, n1));
        visit(base + p.t_s, lam);
        lam = rk4([&](double, double y) { return rho2 * y + 1; }, lam, 0, p.T - p.t_s, std::max(1L, n2));
        visit(base + p.T, lam);
    }
}

// Frozen with an independent scipy computation: x_eq = f(T)/(1 - e^{-1}),
// f(T) by adaptive quadrature, cross-checked by solve_ivp over 60 periods.
inline constexpr double kXeqBeta08 = 0.15292066678916416;
inline constexpr double kXeqBeta1 = 0.03575933226248171;

// Eq. (7) evaluated in double precision for delta=(0.5,1.5), r=0.03, t_s=0.5
// and confirmed by the fixed-point route above.
inline constexpr double kLambdaEqFig2 = -1.10007096176397;
inline constexpr double kLambdaSwitchFig2 = -0.8613552920639338;

inline hybrid_cycle::ModelParams fig2(double beta = 0.8) {
    return hybrid_cycle::make_params(beta, 0.5, 1.5, 0.03, 0.5, 1.0, 0.0);
}

} // namespace oracle
