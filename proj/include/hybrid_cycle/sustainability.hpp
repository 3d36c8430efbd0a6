#pragma once

#include "hybrid_cycle/costate.hpp"
#include "hybrid_cycle/csv.hpp"
#include "hybrid_cycle/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hybrid_cycle {

enum class RhoOrdering { Rho1LessRho2, Rho1GreaterRho2 };

const char* to_string(RhoOrdering ordering);

/// The optimal policy is environmentally sustainable when the costate never
/// drops below -1/beta, i.e. lhs <= 1/beta.
struct SustainabilityReport {
    RhoOrdering ordering = RhoOrdering::Rho1LessRho2;
    double lhs = 0.0;         // equals -lambda_min
    double lambda_min = 0.0;
    double beta_max = 0.0;    // 1/lhs
    double beta = 0.0;
    bool sustainable = false;
    bool lemma3 = false;      // min(rho1, rho2) >= beta
    std::optional<bool> corollary;  // only when raw parameters were supplied
};

/// Left-hand side of the sustainability condition. For rho1 < rho2 it is
///   1/rho2 + (rho2-rho1)/(rho1 rho2) * (e^{rho1 ts} - 1) / (e^{rho1 ts} - e^{rho2 (ts-1)}),
/// for rho1 > rho2
///   1/rho1 + (rho2-rho1)/(rho1 rho2) * e^{rho1 ts}(e^{rho2 (ts-1)} - 1) / (e^{rho1 ts} - e^{rho2 (ts-1)}),
/// both on the unit-period clock (general T is rescaled), and 1/rho on the
/// diagonal rho1 == rho2.
double sustainability_lhs(const CostateRates& rates);

SustainabilityReport check_sustainable(const ModelParams& params);

/// Same as above, plus the raw-parameter corollary.
SustainabilityReport check_sustainable(const RawParams& raw);

bool lemma3_sufficient(const ModelParams& params);

/// xi*q <= a*b*(r + min(delta1, delta2))
bool corollary_raw(const RawParams& raw);

struct RhoRange {
    double lo;
    double hi;
};

struct RegionCell {
    double rho1;
    double rho2;
    bool sustainable;
    bool lemma3;
};

/// n x n cells, rho1-major.
struct RegionGrid {
    std::size_t n = 0;
    double beta = 0.0;
    double t_s = 0.0;
    std::vector<RegionCell> cells;

    double sustainable_fraction() const;
    double lemma3_fraction() const;
};

/// Sustainability over a (rho1, rho2) window for a unit period. Rows are
/// split across up to `threads` workers; the result does not depend on it.
RegionGrid region_grid(RhoRange rho1, RhoRange rho2, std::size_t n, double beta, double t_s,
                       unsigned threads = 1);

/// Columns rho1,rho2,sustainable,lemma3 with flags written as 0/1.
CsvTable to_csv(const RegionGrid& grid);

} // namespace hybrid_cycle
