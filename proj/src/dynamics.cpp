#include "hybrid_cycle/dynamics.hpp"

#include "hybrid_cycle/costate.hpp"
#include "hybrid_cycle/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hybrid_cycle {

void IntegratorConfig::validate(const ModelParams& params) const {
    if (!(std::isfinite(horizon) && horizon > 0))
        throw ValidationError("horizon", "must be > 0");
    if (!(std::isfinite(step) && step > 0)) throw ValidationError("step", "must be > 0");
    const double shortest = std::min(params.t_s, params.T - params.t_s);
    if (step > shortest / 4)
        throw ValidationError("step", "must not exceed a quarter of the shorter regime segment");
}

namespace {

void check_law(const ModelParams& params, const ControlLaw& law) {
    if (law.beta != params.beta)
        throw ValidationError("beta", "control law was built for a different beta");
}

} // namespace

Trajectory integrate(const ModelParams& params, const ControlLaw& law, const IntegratorConfig& cfg) {
    check_law(params, law);
    return integrate(params, Feedback([law](double, double x, double lambda) { return law(lambda, x); }),
                     cfg);
}

Trajectory integrate(const ModelParams& params, const Feedback& feedback,
                     const IntegratorConfig& cfg) {
    params.validate();
    cfg.validate(params);

    const CostateSolution sol = solve_costate(params);
    const RegimeSchedule sched = params.schedule();
    const auto bounds = segment_boundaries(sched, cfg.horizon);

    auto control = [&](double t, double x, double lambda) {
        return std::clamp(feedback(t, x, lambda), 0.0, 1.0);
    };

    Trajectory tr;
    const auto estimate = static_cast<std::size_t>(cfg.horizon / cfg.step) + bounds.size() + 1;
    for (auto* v : {&tr.times, &tr.x, &tr.lambda, &tr.u, &tr.L, &tr.J}) v->reserve(estimate);

    auto record = [&](double t, double x, double lambda) {
        const double u = control(t, x, lambda);
        tr.times.push_back(t);
        tr.x.push_back(x);
        tr.lambda.push_back(lambda);
        tr.u.push_back(u);
        tr.L.push_back(instantaneous_profit(u, x));
    };

    double x = params.x0;
    double t_end = 0.0;
    double lambda_end = sol.lambda_eq;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double a = bounds[i].time;
        const double b = std::min(bounds[i + 1].time, cfg.horizon);
        if (b <= a) break;
        const int regime = bounds[i].regime;
        const double delta = sched.rate(regime);
        const double len = b - a;
        const auto n = std::max<long>(1, static_cast<long>(std::ceil(len / cfg.step - 1e-9)));
        const double h = len / static_cast<double>(n);

        auto rhs = [&](double t, double xs, double lambda) {
            return params.beta * control(t, xs, lambda) - delta * xs;
        };

        for (long j = 0; j < n; ++j) {
            const double o0 = static_cast<double>(j) * h;
            const double o1 = j + 1 == n ? len : static_cast<double>(j + 1) * h;
            const double om = 0.5 * (o0 + o1);
            const double step = o1 - o0;
            const double lam0 = sol.on_segment(regime, o0);
            const double lamm = sol.on_segment(regime, om);
            const double lam1 = sol.on_segment(regime, o1);

            record(a + o0, x, lam0);
            const double k1 = rhs(a + o0, x, lam0);
            const double k2 = rhs(a + om, x + 0.5 * step * k1, lamm);
            const double k3 = rhs(a + om, x + 0.5 * step * k2, lamm);
            const double k4 = rhs(a + o1, x + step * k3, lam1);
            x = std::max(0.0, x + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        }
        t_end = b;
        lambda_end = sol.on_segment(regime, len);
    }
    record(t_end, x, lambda_end);

    tr.J.assign(tr.size(), 0.0);
    for (std::size_t k = 1; k < tr.size(); ++k) {
        const double t0 = tr.times[k - 1];
        const double t1 = tr.times[k];
        tr.J[k] = tr.J[k - 1] + 0.5 * (t1 - t0) *
                                    (std::exp(-params.r * t0) * tr.L[k - 1] +
                                     std::exp(-params.r * t1) * tr.L[k]);
    }
    return tr;
}

namespace {

// Integral over [0, len] of beta*u*(tau)*exp(-delta*(len - tau)) along a
// segment of `regime`. The integrand is smooth apart from the points where
// lambda crosses a saturation level; those are found analytically and used
// as breakpoints.
double segment_forcing(const CostateSolution& sol, int regime, double len) {
    if (len <= 0) return 0.0;
    const ModelParams& p = sol.params;
    const double delta = p.schedule().rate(regime);
    const double rho = regime == 1 ? p.rho1() : p.rho2();
    const double start = regime == 1 ? sol.lambda_eq : sol.lambda_switch;

    std::vector<double> cuts{0.0, len};
    const double scale = start + 1.0 / rho;
    for (const double level : {-1.0 / p.beta, 0.0}) {
        const double ratio = (level + 1.0 / rho) / scale;
        if (scale == 0 || !(ratio > 0)) continue;
        const double tau = std::log(ratio) / rho;
        if (tau > 0 && tau < len) cuts.push_back(tau);
    }
    std::sort(cuts.begin(), cuts.end());

    auto integrand = [&](double tau) {
        return p.beta * optimal_control(sol.on_segment(regime, tau), p.beta) *
               std::exp(-delta * (len - tau));
    };
    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += Quadrature::integrate(integrand, cuts[i], cuts[i + 1], 15, 1e-14);
    return total;
}

} // namespace

double flow_map(const ModelParams& params, const ControlLaw& law, double x0, double t) {
    if (law.kind != ControlKind::Optimal)
        throw UnsupportedLawError("flow_map is defined for the optimal law only");
    check_law(params, law);
    if (!(x0 >= 0)) throw ValidationError("x0", "must be >= 0");
    if (!(t >= 0)) throw ValidationError("t", "must be >= 0");

    const CostateSolution sol = solve_costate(params);
    const RegimeSchedule sched = params.schedule();

    const double decay1 = std::exp(-params.delta1 * params.t_s);
    const double decay2 = std::exp(-params.delta2 * (params.T - params.t_s));
    const double forcing1 = segment_forcing(sol, 1, params.t_s);
    const double forcing_period = forcing1 * decay2 + segment_forcing(sol, 2, params.T - params.t_s);

    // f over whole periods follows f <- f*exp(-D) + f(T).
    const auto periods = static_cast<long>(std::floor(t / params.T));
    double f = 0.0;
    for (long k = 0; k < periods; ++k) f = f * (decay1 * decay2) + forcing_period;

    const double s = std::max(0.0, t - static_cast<double>(periods) * params.T);
    if (s > 0) {
        if (s <= params.t_s) {
            f = f * std::exp(-params.delta1 * s) + segment_forcing(sol, 1, s);
        } else {
            f = (f * decay1 + forcing1) * std::exp(-params.delta2 * (s - params.t_s)) +
                segment_forcing(sol, 2, s - params.t_s);
        }
    }
    return x0 * std::exp(-integrated_decay(sched, t)) + f;
}

double payoff_at(const Trajectory& traj, double t) {
    if (traj.times.empty() || !(t >= traj.times.front()) || !(t <= traj.times.back()))
        throw std::out_of_range("payoff_at: time outside trajectory range");
    auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t);
    const auto k = static_cast<std::size_t>(it - traj.times.begin());
    if (traj.times[k] == t) return traj.J[k];
    const double t0 = traj.times[k - 1];
    const double t1 = traj.times[k];
    const double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * traj.J[k - 1] + w * traj.J[k];
}

double tail_bound(const Trajectory& traj, double r) {
    double sup = 0.0;
    for (double l : traj.L) sup = std::max(sup, std::abs(l));
    const double horizon = traj.times.empty() ? 0.0 : traj.times.back();
    return std::exp(-r * horizon) * sup / r;
}

CsvTable to_csv(const Trajectory& traj) {
    CsvTable table{{"t", "x", "u", "lambda", "L", "J"}, {}};
    table.rows.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k)
        table.rows.push_back({traj.times[k], traj.x[k], traj.u[k], traj.lambda[k], traj.L[k], traj.J[k]});
    return table;
}

} // namespace hybrid_cycle
