#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cri/scenario.hpp"

namespace cri {

/// Raised for any malformed, unknown, or out-of-range configuration input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One run description as read from a JSON config file. Fields not present
/// keep their defaults; unknown fields are rejected outright.
struct RunConfig {
    ScenarioParams scenario{};
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 123456789;
    unsigned workers = 1;
    unsigned bins = 200;
    int figure = 0;                // 0 = no figure preset
    std::vector<double> psi_grid;  // outage thresholds; command default if empty
    std::vector<double> q_grid;    // interference-temperature sweep; default if empty
};

namespace detail {

inline double config_number(const nlohmann::json& j, const std::string& key) {
    if (!j.at(key).is_number())
        throw ConfigError("config field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::uint64_t config_count(const nlohmann::json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError("config field '" + key + "' must be a nonnegative integer");
    if (!v.is_number_unsigned() && v.get<long long>() < 0)
        throw ConfigError("config field '" + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline std::vector<double> config_grid(const nlohmann::json& j, const std::string& key) {
    if (!j.at(key).is_array()) throw ConfigError("config field '" + key + "' must be an array");
    if (j.at(key).empty())
        throw ConfigError("config field '" + key + "' must not be an empty sweep range");
    std::vector<double> grid;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw ConfigError("config field '" + key + "' must contain numbers");
        grid.push_back(v.get<double>());
    }
    return grid;
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    static const std::set<std::string> known = {"p",     "q",       "sigma2",  "lambda1",
                                               "lambda2", "n_su",   "samples", "seed",
                                               "workers", "bins",   "figure",  "psi_grid",
                                               "q_grid"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw ConfigError("unknown config field '" + item.key() + "'");

    RunConfig cfg;
    if (j.contains("p")) cfg.scenario.peak_power = detail::config_number(j, "p");
    if (j.contains("q")) cfg.scenario.interference_temp = detail::config_number(j, "q");
    if (j.contains("sigma2")) cfg.scenario.noise_power = detail::config_number(j, "sigma2");
    if (j.contains("lambda1")) cfg.scenario.pu_rate = detail::config_number(j, "lambda1");
    if (j.contains("lambda2")) cfg.scenario.su_rate = detail::config_number(j, "lambda2");
    if (j.contains("n_su")) {
        const auto n = detail::config_count(j, "n_su");
        if (n < 1 || n > 1000) throw ConfigError("config field 'n_su' must be in [1, 1000]");
        cfg.scenario.su_count = static_cast<int>(n);
    }
    if (j.contains("samples")) {
        cfg.samples = detail::config_count(j, "samples");
        if (cfg.samples < 1) throw ConfigError("config field 'samples' must be at least 1");
    }
    if (j.contains("seed")) cfg.seed = detail::config_count(j, "seed");
    if (j.contains("workers")) {
        const auto w = detail::config_count(j, "workers");
        if (w < 1 || w > 4096) throw ConfigError("config field 'workers' must be in [1, 4096]");
        cfg.workers = static_cast<unsigned>(w);
    }
    if (j.contains("bins")) {
        const auto b = detail::config_count(j, "bins");
        if (b < 1 || b > 1'000'000) throw ConfigError("config field 'bins' must be in [1, 1000000]");
        cfg.bins = static_cast<unsigned>(b);
    }
    if (j.contains("figure")) {
        const auto f = detail::config_count(j, "figure");
        if (f != 0 && (f < 2 || f > 8))
            throw ConfigError("config field 'figure' must be 0 or one of 2..8");
        cfg.figure = static_cast<int>(f);
    }
    if (j.contains("psi_grid")) cfg.psi_grid = detail::config_grid(j, "psi_grid");
    if (j.contains("q_grid")) cfg.q_grid = detail::config_grid(j, "q_grid");

    try {
        cfg.scenario.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid scenario parameters: ") + e.what());
    }
    for (double v : cfg.psi_grid)
        if (!(v >= 0.0)) throw ConfigError("config field 'psi_grid' entries must be nonnegative");
    for (double v : cfg.q_grid)
        if (!(v > 0.0)) throw ConfigError("config field 'q_grid' entries must be positive");
    return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    try {
        return parse_config(j);
    } catch (const ConfigError& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

}  // namespace cri
