#include "hybrid_cycle/sustainability.hpp"

#include "hybrid_cycle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace hybrid_cycle {

const char* to_string(RhoOrdering ordering) {
    return ordering == RhoOrdering::Rho1LessRho2 ? "rho1<rho2" : "rho1>rho2";
}

double sustainability_lhs(const CostateRates& rates) {
    if (rates.rho1 == rates.rho2) return 1.0 / rates.rho1;
    // unit-period clock; see periodic_costate_start
    const double r1 = rates.rho1 * rates.T;
    const double r2 = rates.rho2 * rates.T;
    const double ts = rates.t_s / rates.T;
    const double e1 = std::exp(r1 * ts);
    const double e2 = std::exp(r2 * (ts - 1.0));
    const double gap = (r2 - r1) / (r1 * r2);
    const double lhs = r1 < r2 ? 1.0 / r2 + gap * (e1 - 1.0) / (e1 - e2)
                               : 1.0 / r1 + gap * e1 * (e2 - 1.0) / (e1 - e2);
    return rates.T * lhs;
}

bool lemma3_sufficient(const ModelParams& params) {
    return std::min(params.rho1(), params.rho2()) >= params.beta;
}

bool corollary_raw(const RawParams& raw) {
    raw.validate();
    return raw.xi * raw.q <= raw.a * raw.b * (raw.r + std::min(raw.delta1, raw.delta2));
}

SustainabilityReport check_sustainable(const ModelParams& params) {
    params.validate();
    SustainabilityReport rep;
    rep.ordering = params.rho1() < params.rho2() ? RhoOrdering::Rho1LessRho2 : RhoOrdering::Rho1GreaterRho2;
    rep.lhs = sustainability_lhs(CostateRates::from(params));
    rep.lambda_min = lambda_extrema(solve_costate(params)).lambda_min;
    rep.beta_max = 1.0 / rep.lhs;
    rep.beta = params.beta;
    rep.sustainable = rep.lhs <= 1.0 / params.beta;
    rep.lemma3 = lemma3_sufficient(params);
    return rep;
}

SustainabilityReport check_sustainable(const RawParams& raw) {
    SustainabilityReport rep = check_sustainable(normalize(raw));
    rep.corollary = corollary_raw(raw);
    return rep;
}

double RegionGrid::sustainable_fraction() const {
    if (cells.empty()) return 0.0;
    const auto k = std::count_if(cells.begin(), cells.end(), [](const RegionCell& c) { return c.sustainable; });
    return static_cast<double>(k) / static_cast<double>(cells.size());
}

double RegionGrid::lemma3_fraction() const {
    if (cells.empty()) return 0.0;
    const auto k = std::count_if(cells.begin(), cells.end(), [](const RegionCell& c) { return c.lemma3; });
    return static_cast<double>(k) / static_cast<double>(cells.size());
}

namespace {

double grid_point(RhoRange range, std::size_t i, std::size_t n) {
    return range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

} // namespace

RegionGrid region_grid(RhoRange rho1, RhoRange rho2, std::size_t n, double beta, double t_s,
                       unsigned threads) {
    if (!(rho1.lo > 0 && rho1.hi >= rho1.lo)) throw ValidationError("rho1_range", "must be positive and ordered");
    if (!(rho2.lo > 0 && rho2.hi >= rho2.lo)) throw ValidationError("rho2_range", "must be positive and ordered");
    if (n < 2) throw ValidationError("grid", "must be >= 2");
    if (!(beta > 0)) throw ValidationError("beta", "must be > 0");
    if (!(t_s > 0 && t_s < 1)) throw ValidationError("t_s", "must lie in (0,1)");

    RegionGrid grid;
    grid.n = n;
    grid.beta = beta;
    grid.t_s = t_s;
    grid.cells.resize(n * n);

    auto fill_rows = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < n; i += stride) {
            const double r1 = grid_point(rho1, i, n);
            for (std::size_t j = 0; j < n; ++j) {
                const double r2 = grid_point(rho2, j, n);
                const double lhs = sustainability_lhs({r1, r2, t_s, 1.0});
                grid.cells[i * n + j] = {r1, r2, lhs <= 1.0 / beta, std::min(r1, r2) >= beta};
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
    if (workers == 1) {
        fill_rows(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(fill_rows, w, workers);
    }
    return grid;
}

CsvTable to_csv(const RegionGrid& grid) {
    CsvTable table{{"rho1", "rho2", "sustainable", "lemma3"}, {}};
    table.rows.reserve(grid.cells.size());
    for (const auto& c : grid.cells)
        table.rows.push_back({c.rho1, c.rho2, c.sustainable ? 1.0 : 0.0, c.lemma3 ? 1.0 : 0.0});
    return table;
}

} // namespace hybrid_cycle
