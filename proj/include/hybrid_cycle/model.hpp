#pragma once

#include <vector>

namespace hybrid_cycle {

/// Unnormalized pollution-control data.
///
///   z' = xi*v - delta(t)*z,   payoff  a*v*(b - v/2) - q*z  discounted at r,
///
/// with delta(t) = delta1 on [kT, kT + alpha*T) and delta2 on the rest of
/// each period.
struct RawParams {
    double a = 1.0;       // profit scale
    double b = 1.0;       // maximal admissible emission rate
    double q = 1.0;       // ecotax rate
    double xi = 0.5;      // accumulated fraction, in (0,1)
    double delta1 = 0.5;
    double delta2 = 1.5;
    double r = 0.03;
    double z0 = 0.0;
    double alpha = 0.5;   // first-subinterval fraction, in (0,1)
    double T = 1.0;

    /// Throws ValidationError naming the first offending field.
    void validate() const;
};

/// Time-driven two-regime schedule of the self-cleaning rate.
struct RegimeSchedule {
    double t_s = 0.5;
    double T = 1.0;
    double delta1 = 0.5;
    double delta2 = 1.5;

    /// Time elapsed since the start of the current period, in [0, T).
    double phase(double t) const;
    /// 1 on [kT, kT + t_s), 2 on [kT + t_s, (k+1)T).
    int regime_at(double t) const;
    double rate(int regime) const { return regime == 1 ? delta1 : delta2; }
    /// Length of the segment that starts a regime.
    double segment_length(int regime) const { return regime == 1 ? t_s : T - t_s; }
    /// delta1*t_s + delta2*(T - t_s)
    double decay_per_period() const { return delta1 * t_s + delta2 * (T - t_s); }
};

/// Normalized problem: x' = beta*u - delta(t)*x, payoff u(1 - u/2) - x.
struct ModelParams {
    double beta = 0.8;
    double delta1 = 0.5;
    double delta2 = 1.5;
    double r = 0.03;
    double t_s = 0.5;
    double T = 1.0;
    double x0 = 0.0;

    double rho1() const { return r + delta1; }
    double rho2() const { return r + delta2; }
    double delta_min() const { return delta1 < delta2 ? delta1 : delta2; }
    RegimeSchedule schedule() const { return {t_s, T, delta1, delta2}; }

    /// Throws ValidationError naming the first offending field.
    void validate() const;
};

/// Builds validated normalized parameters.
ModelParams make_params(double beta, double delta1, double delta2, double r,
                        double t_s, double T = 1.0, double x0 = 0.0);

/// u = v/b, x = q z/(a b^2), beta = xi q/(a b), t_s = alpha T.
ModelParams normalize(const RawParams& raw);

double delta_at(const RegimeSchedule& schedule, double t);

/// Exact value of the integral of delta over [0, t].
double integrated_decay(const RegimeSchedule& schedule, double t);

struct SegmentBoundary {
    double time;
    int regime;  // regime active on the segment starting at `time`

    bool operator==(const SegmentBoundary&) const = default;
};

/// Boundaries {0, t_s, T, T + t_s, ...} up to and including the first one
/// that is >= horizon.
std::vector<SegmentBoundary> segment_boundaries(const RegimeSchedule& schedule,
                                                double horizon);

} // namespace hybrid_cycle
