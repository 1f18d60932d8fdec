// cri - closed-form primary-user performance metrics for underlay cognitive
// radio, with a Monte Carlo / quadrature validation pipeline. Subcommands:
//
//   analyze   theoretical curves as CSV (figure presets or a raw scenario)
//   simulate  deterministic Monte Carlo runs as CSV
//   validate  the full theory-vs-oracle-vs-simulation agreement grid
//   sweep     scalar metrics against one swept parameter
//
// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numeric failure.
// Set CRI_LOG=info or CRI_LOG=debug for progress output on stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cri/analytic.hpp"
#include "cri/config.hpp"
#include "cri/csv.hpp"
#include "cri/figures.hpp"
#include "cri/validation.hpp"

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("CRI_LOG");
    if (!env) return LogLevel::quiet;
    const std::string v = env;
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    return LogLevel::quiet;
}

void log_line(LogLevel at_least, const std::string& message) {
    if (log_level() >= at_least) std::cerr << "[cri] " << message << "\n";
}

cri::RunConfig load_or_default(const std::string& config_path) {
    if (config_path.empty()) {
        log_line(LogLevel::info, "no config given, using built-in defaults");
        return cri::RunConfig{};
    }
    return cri::load_config_file(config_path);
}

void write_outputs(const std::vector<cri::NamedCsv>& files, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto& file : files) {
        const auto path = std::filesystem::path(out_dir) / file.filename;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + path.string());
        out << file.content;
        log_line(LogLevel::debug, "wrote " + path.string());
    }
    log_line(LogLevel::info, "wrote " + std::to_string(files.size()) + " files to " + out_dir);
}

nlohmann::json report_to_json(const cri::ValidationReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row = {{"metric", r.metric},     {"scenario", r.scenario},
                              {"theory", r.theory},     {"oracle", r.oracle},
                              {"tolerance", r.tolerance}, {"pass", r.pass}};
        if (r.simulation) row["simulation"] = *r.simulation;
        if (r.sim_se) row["simulation_se"] = *r.sim_se;
        rows.push_back(std::move(row));
    }
    return {{"rows", rows}, {"passed", report.passed()}, {"total", report.total()}};
}

int run_analyze(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = load_or_default(config_path);
    write_outputs(cri::analyze_outputs(cfg), out_dir);
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = load_or_default(config_path);
    write_outputs(cri::simulate_outputs(cfg), out_dir);
    return 0;
}

int run_validate(const std::string& config_path, const std::string& out_dir, bool quick) {
    const auto cfg = load_or_default(config_path);
    cri::ValidationConfig vc{cfg.samples, cfg.seed, cfg.workers, quick};
    log_line(LogLevel::info, quick ? "running quick validation grid" : "running validation grid");
    const auto report = cri::run_validation(vc);
    std::cout << cri::render_report_table(report);
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / "validation_report.json";
    std::ofstream out(path, std::ios::binary);
    out << report_to_json(report).dump(2) << "\n";
    log_line(LogLevel::info, "report written to " + path.string());
    return report.all_pass() ? 0 : 1;
}

int run_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& param, double from, double to, unsigned steps) {
    const auto cfg = load_or_default(config_path);
    if (steps < 1) throw cri::ConfigError("sweep: steps must be at least 1");
    if (!(from > 0.0) || !(to >= from))
        throw cri::ConfigError("sweep: need 0 < from <= to (empty or invalid range)");

    std::vector<double> grid;
    if (steps == 1) {
        grid.push_back(from);
    } else {
        for (unsigned i = 0; i < steps; ++i)
            grid.push_back(from + (to - from) * static_cast<double>(i) /
                                      static_cast<double>(steps - 1));
    }

    cri::CsvBuilder csv({param, "mean_sinr", "mean_capacity", "outage_psi_1"});
    for (double value : grid) {
        cri::ScenarioParams sc = cfg.scenario;
        if (param == "p")
            sc.peak_power = value;
        else if (param == "q")
            sc.interference_temp = value;
        else if (param == "sigma2")
            sc.noise_power = value;
        else if (param == "lambda1")
            sc.pu_rate = value;
        else if (param == "lambda2")
            sc.su_rate = value;
        else
            throw cri::ConfigError("sweep: unknown parameter '" + param + "'");
        try {
            sc.validate();
        } catch (const std::invalid_argument& e) {
            throw cri::ConfigError(std::string("sweep: ") + e.what());
        }
        const bool closed = sc.unit_rate() && sc.su_count == 1;
        csv.row_values({value, closed ? cri::mean_sinr(sc) : cri::mean_sinr_numeric(sc),
                        closed ? cri::mean_capacity(sc) : cri::mean_capacity_numeric(sc),
                        closed ? cri::outage_probability(sc, 1.0) : cri::outage_numeric(sc, 1.0)});
    }
    write_outputs({{"sweep_" + param + ".csv", csv.str()}}, out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"primary-user performance analysis for underlay cognitive radio"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";

    auto* analyze = app.add_subcommand("analyze", "evaluate theoretical curves to CSV");
    analyze->add_option("--config", config_path, "JSON config file");
    analyze->add_option("--out", out_dir, "output directory");

    auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo simulator to CSV");
    simulate->add_option("--config", config_path, "JSON config file");
    simulate->add_option("--out", out_dir, "output directory");

    bool quick = false;
    auto* validate = app.add_subcommand("validate", "run the theory/simulation agreement grid");
    validate->add_option("--config", config_path, "JSON config file");
    validate->add_option("--out", out_dir, "output directory for the JSON report");
    validate->add_flag("--quick", quick, "smaller sample counts and thinner grids");

    std::string sweep_param = "q";
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    unsigned sweep_steps = 0;
    auto* sweep = app.add_subcommand("sweep", "sweep one parameter and tabulate metrics");
    sweep->add_option("--config", config_path, "JSON config file with the base scenario");
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--param", sweep_param, "one of p, q, sigma2, lambda1, lambda2");
    sweep->add_option("--from", sweep_from, "first value")->required();
    sweep->add_option("--to", sweep_to, "last value")->required();
    sweep->add_option("--steps", sweep_steps, "number of sweep points")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(config_path, out_dir);
        if (app.got_subcommand(simulate)) return run_simulate(config_path, out_dir);
        if (app.got_subcommand(validate)) return run_validate(config_path, out_dir, quick);
        if (app.got_subcommand(sweep))
            return run_sweep(config_path, out_dir, sweep_param, sweep_from, sweep_to, sweep_steps);
    } catch (const cri::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cri::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
