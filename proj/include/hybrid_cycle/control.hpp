#pragma once

namespace hybrid_cycle {

enum class ControlKind { Optimal, Myopic };

/// Saturated maximizer of the Hamiltonian:
///   0 if lambda < -1/beta,  1 + beta*lambda on [-1/beta, 0],  1 if lambda > 0.
double optimal_control(double lambda, double beta);

/// Liquidity-constrained law. Keeps u >= 1 - sqrt(1 - 2x) so the
/// instantaneous profit stays nonnegative while x <= 1/2; for x > 1/2 (or
/// lambda > 0) it produces at full rate.
double myopic_control(double lambda, double x, double beta);

/// u(1 - u/2) - x
double instantaneous_profit(double u, double x);

/// A feedback law together with the impact ratio it was built for.
struct ControlLaw {
    ControlKind kind = ControlKind::Optimal;
    double beta = 1.0;

    static ControlLaw optimal(double beta);
    static ControlLaw myopic(double beta);

    double operator()(double lambda, double x) const {
        return kind == ControlKind::Optimal ? optimal_control(lambda, beta)
                                            : myopic_control(lambda, x, beta);
    }
};

const char* to_string(ControlKind kind);

} // namespace hybrid_cycle
