#pragma once

#include "hybrid_cycle/model.hpp"
#include "hybrid_cycle/sustainability.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace hybrid_cycle {

enum class Scenario { Optimal, Myopic, Compare, LimitCycle, Region, Sustainability };
enum class OutputFormat { Csv, Json };

std::optional<Scenario> parse_scenario(const std::string& name);
const char* to_string(Scenario s);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 2;
inline constexpr int numerical = 3;
inline constexpr int io = 4;
} // namespace exit_code

/// Everything a single run needs. Defaults reproduce the figure setting
/// delta1 = 0.5, delta2 = 1.5, r = 0.03, t_s = 0.5, T = 1, x0 = 0, beta = 0.8.
struct ScenarioConfig {
    Scenario scenario = Scenario::Optimal;
    ModelParams params;
    std::optional<RawParams> raw;  // kept only while it still describes `params`
    double horizon = 20.0;
    double step = 1e-3;
    std::optional<std::string> out;
    OutputFormat format = OutputFormat::Csv;
    std::optional<RhoRange> rho1_range;
    std::optional<RhoRange> rho2_range;
    std::optional<std::size_t> grid;
    unsigned threads = 1;

    /// Throws ValidationError.
    void validate() const;
};

/// Loads a configuration document (see params_from_json for the parameter
/// blocks; optional keys horizon, step, out, format, rho1_range, rho2_range,
/// grid).
ScenarioConfig config_from_json_file(const std::string& path, Scenario scenario);

/// "a:b" -> {a, b}
RhoRange parse_range(const std::string& text);

/// Executes one scenario. Data goes to `cfg.out` when set, otherwise to
/// `out`; summaries and diagnostics go to `err`. Returns an exit code.
int run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (subcommand + flags), applies the
/// HYBRID_CYCLE_THREADS cap and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hybrid_cycle
