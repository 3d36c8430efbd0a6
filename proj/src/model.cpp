#include "hybrid_cycle/model.hpp"

#include "hybrid_cycle/errors.hpp"

#include <cmath>
#include <string>

namespace hybrid_cycle {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

void RawParams::validate() const {
    require(finite(a) && a > 0, "a", "must be > 0");
    require(finite(b) && b > 0, "b", "must be > 0");
    require(finite(q) && q > 0, "q", "must be > 0");
    require(finite(xi) && xi > 0 && xi < 1, "xi", "must lie in (0,1)");
    require(finite(delta1) && delta1 > 0, "delta1", "must be > 0");
    require(finite(delta2) && delta2 > 0, "delta2", "must be > 0");
    require(delta1 != delta2, "delta2", "must differ from delta1");
    require(finite(r) && r > 0, "r", "must be > 0");
    require(finite(z0) && z0 >= 0, "z0", "must be >= 0");
    require(finite(alpha) && alpha > 0 && alpha < 1, "alpha", "must lie in (0,1)");
    require(finite(T) && T > 0, "T", "must be > 0");
}

void ModelParams::validate() const {
    require(finite(beta) && beta > 0, "beta", "must be > 0");
    require(finite(delta1) && delta1 > 0, "delta1", "must be > 0");
    require(finite(delta2) && delta2 > 0, "delta2", "must be > 0");
    require(delta1 != delta2, "delta2", "must differ from delta1");
    require(finite(r) && r > 0, "r", "must be > 0");
    require(finite(T) && T > 0, "T", "must be > 0");
    require(finite(t_s) && t_s > 0 && t_s < T, "t_s", "must lie in (0,T)");
    require(finite(x0) && x0 >= 0, "x0", "must be >= 0");
}

ModelParams make_params(double beta, double delta1, double delta2, double r,
                        double t_s, double T, double x0) {
    ModelParams p{beta, delta1, delta2, r, t_s, T, x0};
    p.validate();
    return p;
}

ModelParams normalize(const RawParams& raw) {
    raw.validate();
    ModelParams p;
    p.beta = raw.xi * raw.q / (raw.a * raw.b);
    p.delta1 = raw.delta1;
    p.delta2 = raw.delta2;
    p.r = raw.r;
    p.t_s = raw.alpha * raw.T;
    p.T = raw.T;
    p.x0 = raw.q * raw.z0 / (raw.a * raw.b * raw.b);
    p.validate();
    return p;
}

double RegimeSchedule::phase(double t) const {
    double s = std::fmod(t, T);
    if (s < 0) s += T;
    // fmod can land on T itself after the sign fix
    return s >= T ? 0.0 : s;
}

int RegimeSchedule::regime_at(double t) const { return phase(t) < t_s ? 1 : 2; }

double delta_at(const RegimeSchedule& schedule, double t) {
    return schedule.rate(schedule.regime_at(t));
}

double integrated_decay(const RegimeSchedule& schedule, double t) {
    const double periods = std::floor(t / schedule.T);
    double s = t - periods * schedule.T;
    if (s < 0) s = 0;
    const double partial = s < schedule.t_s
                               ? schedule.delta1 * s
                               : schedule.delta1 * schedule.t_s + schedule.delta2 * (s - schedule.t_s);
    return periods * schedule.decay_per_period() + partial;
}

std::vector<SegmentBoundary> segment_boundaries(const RegimeSchedule& schedule,
                                                double horizon) {
    std::vector<SegmentBoundary> out;
    // Times are built as k*T and k*T + t_s, never by accumulation, so they
    // do not drift over long horizons.
    for (long k = 0;; ++k) {
        const double start = static_cast<double>(k) * schedule.T;
        out.push_back({start, 1});
        if (start >= horizon) break;
        const double mid = start + schedule.t_s;
        out.push_back({mid, 2});
        if (mid >= horizon) break;
    }
    return out;
}

} // namespace hybrid_cycle
