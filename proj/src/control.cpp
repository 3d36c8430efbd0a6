#include "hybrid_cycle/control.hpp"

#include "hybrid_cycle/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hybrid_cycle {

double optimal_control(double lambda, double beta) {
    if (lambda > 0) return 1.0;
    if (lambda < -1.0 / beta) return 0.0;
    // clamp absorbs roundoff at lambda == -1/beta
    return std::clamp(beta * lambda + 1.0, 0.0, 1.0);
}

double myopic_control(double lambda, double x, double beta) {
    if (lambda > 0 || x > 0.5) return 1.0;
    const double slack = std::sqrt(std::clamp(1.0 - 2.0 * x, 0.0, 1.0));
    if (-beta * lambda >= slack) return 1.0 - slack;
    return 1.0 + beta * lambda;
}

double instantaneous_profit(double u, double x) { return u * (1.0 - 0.5 * u) - x; }

ControlLaw ControlLaw::optimal(double beta) {
    if (!(beta > 0)) throw ValidationError("beta", "must be > 0");
    return {ControlKind::Optimal, beta};
}

ControlLaw ControlLaw::myopic(double beta) {
    if (!(beta > 0)) throw ValidationError("beta", "must be > 0");
    return {ControlKind::Myopic, beta};
}

const char* to_string(ControlKind kind) {
    return kind == ControlKind::Optimal ? "optimal" : "myopic";
}

} // namespace hybrid_cycle
