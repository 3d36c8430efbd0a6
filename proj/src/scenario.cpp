#include "hybrid_cycle/scenario.hpp"

#include "hybrid_cycle/costate.hpp"
#include "hybrid_cycle/dynamics.hpp"
#include "hybrid_cycle/errors.hpp"
#include "hybrid_cycle/limit_cycle.hpp"
#include "hybrid_cycle/params_json.hpp"
#include "hybrid_cycle/report_json.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace hybrid_cycle {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::pair<const char*, Scenario> kScenarioNames[] = {
    {"optimal", Scenario::Optimal},        {"myopic", Scenario::Myopic},
    {"compare", Scenario::Compare},        {"limit-cycle", Scenario::LimitCycle},
    {"region", Scenario::Region},          {"sustainability", Scenario::Sustainability},
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    f.close();
    if (!f) throw IoError("failed writing '" + path + "'");
}

std::string csv_string(const CsvTable& table) {
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

void emit(const ScenarioConfig& cfg, std::ostream& out, const std::string& payload) {
    if (cfg.out) {
        write_file(*cfg.out, payload);
    } else {
        out << payload;
    }
}

nlohmann::json trajectory_json(const Trajectory& tr) {
    return {{"t", tr.times}, {"x", tr.x}, {"u", tr.u}, {"lambda", tr.lambda}, {"L", tr.L}, {"J", tr.J}};
}

IntegratorConfig integrator(const ScenarioConfig& cfg) { return {cfg.step, cfg.horizon}; }

void run_trajectory(const ScenarioConfig& cfg, ControlLaw law, std::ostream& out, std::ostream& err) {
    const Trajectory tr = integrate(cfg.params, law, integrator(cfg));
    const double tail = tail_bound(tr, cfg.params.r);
    if (cfg.format == OutputFormat::Json) {
        nlohmann::json doc = {{"law", to_string(law.kind)},
                              {"params", to_json(cfg.params)},
                              {"J_horizon", tr.J.back()},
                              {"tail_bound", tail},
                              {"trajectory", trajectory_json(tr)}};
        emit(cfg, out, doc.dump(2) + "\n");
    } else {
        emit(cfg, out, csv_string(to_csv(tr)));
    }
    err << to_string(law.kind) << ": J(" << format_double(cfg.horizon) << ") = " << format_double(tr.J.back())
        << ", tail bound " << format_double(tail) << "\n";
}

void run_compare(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
    const Trajectory opt = integrate(cfg.params, ControlLaw::optimal(cfg.params.beta), integrator(cfg));
    const Trajectory myo = integrate(cfg.params, ControlLaw::myopic(cfg.params.beta), integrator(cfg));
    if (opt.size() != myo.size()) throw NumericalError("compare: trajectories on different grids");

    if (cfg.format == OutputFormat::Json) {
        std::vector<double> diff(opt.size());
        for (std::size_t k = 0; k < opt.size(); ++k) diff[k] = opt.J[k] - myo.J[k];
        nlohmann::json doc = {{"params", to_json(cfg.params)},
                              {"t", opt.times},
                              {"J", opt.J},
                              {"J_u", myo.J},
                              {"J_minus_J_u", diff}};
        emit(cfg, out, doc.dump(2) + "\n");
    } else {
        CsvTable table{{"t", "J", "J_u", "J_minus_J_u"}, {}};
        table.rows.reserve(opt.size());
        for (std::size_t k = 0; k < opt.size(); ++k)
            table.rows.push_back({opt.times[k], opt.J[k], myo.J[k], opt.J[k] - myo.J[k]});
        emit(cfg, out, csv_string(table));
    }
    err << "compare: J(" << format_double(cfg.horizon) << ") = " << format_double(opt.J.back())
        << ", J_u = " << format_double(myo.J.back()) << "\n";
}

std::string sidecar_path(const std::string& out) {
    std::filesystem::path p(out);
    p.replace_extension(".json");
    if (p.string() == out) return out + ".sidecar.json";
    return p.string();
}

void run_limit_cycle(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto n = static_cast<std::size_t>(std::max(1L, std::lround(cfg.params.T / cfg.step)));
    const LimitCycle cycle = find_x_eq(cfg.params, n);
    const nlohmann::json sidecar = cycle_sidecar(cycle);
    if (cfg.format == OutputFormat::Json) {
        nlohmann::json doc = sidecar;
        nlohmann::json t, x, u, lam;
        for (const auto& s : cycle.samples) {
            t.push_back(s.t);
            x.push_back(s.x);
            u.push_back(s.u);
            lam.push_back(s.lambda);
        }
        doc["samples"] = {{"t", t}, {"x_h", x}, {"u", u}, {"lambda", lam}};
        emit(cfg, out, doc.dump(2) + "\n");
    } else {
        emit(cfg, out, csv_string(to_csv(cycle)));
        if (cfg.out) write_file(sidecar_path(*cfg.out), sidecar.dump(2) + "\n");
    }
    err << "limit-cycle: " << sidecar.dump() << "\n";
}

void run_region(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
    const double ts = cfg.params.t_s / cfg.params.T;
    const RegionGrid grid = region_grid(*cfg.rho1_range, *cfg.rho2_range, *cfg.grid, cfg.params.beta, ts,
                                        cfg.threads);
    if (cfg.format == OutputFormat::Json) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : grid.cells)
            cells.push_back({{"rho1", c.rho1}, {"rho2", c.rho2}, {"sustainable", c.sustainable}, {"lemma3", c.lemma3}});
        nlohmann::json doc = {{"beta", grid.beta},
                              {"t_s", grid.t_s},
                              {"n", grid.n},
                              {"sustainable_fraction", grid.sustainable_fraction()},
                              {"lemma3_fraction", grid.lemma3_fraction()},
                              {"cells", cells}};
        emit(cfg, out, doc.dump(2) + "\n");
    } else {
        emit(cfg, out, csv_string(to_csv(grid)));
    }
    err << "region: sustainable fraction " << format_double(grid.sustainable_fraction())
        << ", lemma3 fraction " << format_double(grid.lemma3_fraction()) << "\n";
}

void run_sustainability(const ScenarioConfig& cfg, std::ostream& out) {
    const SustainabilityReport rep = cfg.raw ? check_sustainable(*cfg.raw) : check_sustainable(cfg.params);
    nlohmann::json doc = to_json(rep);
    doc["params"] = to_json(cfg.params);
    emit(cfg, out, doc.dump(2) + "\n");
}

double number_key(const nlohmann::json& doc, const char* key) {
    if (!doc.at(key).is_number()) throw ValidationError(key, "must be a number");
    return doc.at(key).get<double>();
}

RhoRange range_key(const nlohmann::json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (v.is_string()) return parse_range(v.get<std::string>());
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw ValidationError(key, "expected [lo, hi] or \"lo:hi\"");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ValidationError("format", "must be csv or json");
}

unsigned thread_cap() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HYBRID_CYCLE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

} // namespace

std::optional<Scenario> parse_scenario(const std::string& name) {
    for (const auto& [key, value] : kScenarioNames)
        if (name == key) return value;
    return std::nullopt;
}

const char* to_string(Scenario s) {
    for (const auto& [key, value] : kScenarioNames)
        if (s == value) return key;
    return "?";
}

RhoRange parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ValidationError("range", "expected a:b, got '" + text + "'");
    try {
        std::size_t used = 0;
        const std::string lo = text.substr(0, colon);
        const std::string hi = text.substr(colon + 1);
        const double a = std::stod(lo, &used);
        if (used != lo.size()) throw std::invalid_argument(lo);
        const double b = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(hi);
        return {a, b};
    } catch (const std::logic_error&) {
        throw ValidationError("range", "expected a:b, got '" + text + "'");
    }
}

void ScenarioConfig::validate() const {
    if (raw) raw->validate();
    params.validate();
    if (scenario == Scenario::Optimal || scenario == Scenario::Myopic || scenario == Scenario::Compare)
        IntegratorConfig{step, horizon}.validate(params);
    if (scenario == Scenario::LimitCycle && !(std::isfinite(step) && step > 0))
        throw ValidationError("step", "must be > 0");
    if (scenario == Scenario::Region) {
        if (!rho1_range) throw ValidationError("rho1_range", "required for region");
        if (!rho2_range) throw ValidationError("rho2_range", "required for region");
        if (!grid) throw ValidationError("grid", "required for region");
    }
}

ScenarioConfig config_from_json_file(const std::string& path, Scenario scenario) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config", e.what());
    }

    ScenarioConfig cfg;
    cfg.scenario = scenario;
    LoadedParams loaded = params_from_json(doc);
    cfg.params = loaded.params;
    cfg.raw = loaded.raw;
    if (doc.contains("horizon")) cfg.horizon = number_key(doc, "horizon");
    if (doc.contains("step")) cfg.step = number_key(doc, "step");
    if (doc.contains("out")) cfg.out = doc.at("out").get<std::string>();
    if (doc.contains("format")) cfg.format = parse_format(doc.at("format").get<std::string>());
    if (doc.contains("rho1_range")) cfg.rho1_range = range_key(doc, "rho1_range");
    if (doc.contains("rho2_range")) cfg.rho2_range = range_key(doc, "rho2_range");
    if (doc.contains("grid")) {
        const double g = number_key(doc, "grid");
        if (!(g >= 2) || g != std::floor(g)) throw ValidationError("grid", "must be an integer >= 2");
        cfg.grid = static_cast<std::size_t>(g);
    }
    return cfg;
}

int run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        switch (cfg.scenario) {
        case Scenario::Optimal: run_trajectory(cfg, ControlLaw::optimal(cfg.params.beta), out, err); break;
        case Scenario::Myopic: run_trajectory(cfg, ControlLaw::myopic(cfg.params.beta), out, err); break;
        case Scenario::Compare: run_compare(cfg, out, err); break;
        case Scenario::LimitCycle: run_limit_cycle(cfg, out, err); break;
        case Scenario::Region: run_region(cfg, out, err); break;
        case Scenario::Sustainability: run_sustainability(cfg, out); break;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const UnsupportedLawError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_code::numerical;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_code::io;
    }
    return exit_code::ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal hybrid-limit-cycle pollution control: scenarios and figure data"};
    std::string scenario_name;
    std::string config_path;
    std::optional<double> beta, delta1, delta2, r, ts, period, x0, horizon, step;
    std::optional<std::string> out_path, format, rho1, rho2;
    std::optional<std::size_t> grid;

    app.add_option("scenario", scenario_name,
                   "optimal | myopic | compare | limit-cycle | region | sustainability")
        ->required();
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--beta", beta);
    app.add_option("--delta1", delta1);
    app.add_option("--delta2", delta2);
    app.add_option("--r", r);
    app.add_option("--ts", ts, "switching time t_s");
    app.add_option("--period", period, "regime period T");
    app.add_option("--x0", x0);
    app.add_option("--horizon", horizon);
    app.add_option("--step", step);
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json");
    app.add_option("--rho1-range", rho1, "a:b");
    app.add_option("--rho2-range", rho2, "a:b");
    app.add_option("--grid", grid, "grid points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::validation;
    }

    const auto scenario = parse_scenario(scenario_name);
    if (!scenario) {
        err << "error: unknown scenario '" << scenario_name << "'\n" << app.help();
        return exit_code::validation;
    }

    try {
        ScenarioConfig cfg;
        cfg.scenario = *scenario;
        if (!config_path.empty()) cfg = config_from_json_file(config_path, *scenario);

        // flags win over the file
        ModelParams& p = cfg.params;
        bool overridden = false;
        auto apply = [&](const std::optional<double>& flag, double& field) {
            if (flag) {
                field = *flag;
                overridden = true;
            }
        };
        apply(beta, p.beta);
        apply(delta1, p.delta1);
        apply(delta2, p.delta2);
        apply(r, p.r);
        apply(ts, p.t_s);
        apply(period, p.T);
        apply(x0, p.x0);
        if (overridden) cfg.raw.reset();
        if (horizon) cfg.horizon = *horizon;
        if (step) cfg.step = *step;
        if (out_path) cfg.out = *out_path;
        if (format) cfg.format = parse_format(*format);
        if (rho1) cfg.rho1_range = parse_range(*rho1);
        if (rho2) cfg.rho2_range = parse_range(*rho2);
        if (grid) cfg.grid = *grid;
        cfg.threads = thread_cap();
        return run(cfg, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_code::io;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::validation;
    }
}

} // namespace hybrid_cycle
