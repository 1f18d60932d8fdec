#pragma once

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cri/analytic.hpp"
#include "cri/config.hpp"
#include "cri/csv.hpp"
#include "cri/curve.hpp"
#include "cri/montecarlo.hpp"
#include "cri/quadrature.hpp"

namespace cri {

/// One output file of an `analyze` or `simulate` run, fully rendered.
/// Keeping file content in memory lets the determinism checks compare the
/// exact bytes the CLI would write.
struct NamedCsv {
    std::string filename;
    std::string content;
};

inline std::vector<double> default_q_grid() {
    std::vector<double> grid(50);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 10.0 * static_cast<double>(i + 1) / 50.0;  // (0, 10]
    return grid;
}

inline std::vector<double> default_psi_grid() { return linspace(0.0, 4.0, 81); }

namespace detail {

inline std::string tag_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    std::string s = buf;
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

inline std::string scenario_tag(const ScenarioParams& sc) {
    return "p" + tag_number(sc.peak_power) + "_q" + tag_number(sc.interference_temp) + "_n" +
           std::to_string(sc.su_count);
}

inline NamedCsv curve_csv(const std::string& filename, const DensityCurve& curve) {
    CsvBuilder csv({"x", "value"});
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        csv.row_values({curve.grid[i], curve.values[i]});
    return {filename, csv.str()};
}

inline NamedCsv curve_csv_with_atom(const std::string& filename, const DensityCurve& curve,
                                    const Atom& atom) {
    CsvBuilder csv({"x", "value", "atom_location", "atom_mass"});
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        csv.row_values({curve.grid[i], curve.values[i], atom.location, atom.mass});
    return {filename, csv.str()};
}

inline std::vector<double> ni_grid(const ScenarioParams& sc) {
    return linspace(sc.noise_power, sc.cap_location() + 0.25 * sc.interference_temp, 501);
}

inline std::vector<double> sinr_grid(const ScenarioParams& sc) {
    return linspace(0.0, sinr_upper_cutoff(sc, 1e-3), 601);
}

// Both (p, q) orderings of a scenario, largest power first; the two-case
// figures compare p > q against p < q.
inline std::vector<ScenarioParams> power_cap_pair(const ScenarioParams& base) {
    ScenarioParams hi = base;
    hi.peak_power = std::max(base.peak_power, base.interference_temp);
    hi.interference_temp = std::min(base.peak_power, base.interference_temp);
    if (hi.peak_power == hi.interference_temp) return {hi};
    ScenarioParams lo = hi;
    std::swap(lo.peak_power, lo.interference_temp);
    return {hi, lo};
}

inline void append_ni_curves(std::vector<NamedCsv>& out, const ScenarioParams& sc) {
    const auto law = ni_law_multi(sc);
    const auto grid = ni_grid(sc);
    const std::string tag = scenario_tag(sc);
    const auto pdf = evaluate_curve([&law](double x) { return law.continuous_pdf(x); }, grid,
                                    "ni pdf " + sc.id());
    const auto cdf =
        evaluate_curve([&law](double x) { return law.cdf(x); }, grid, "ni cdf " + sc.id());
    const Atom cap_atom{law.continuous_hi(), law.atom_mass_at(law.continuous_hi())};
    out.push_back(curve_csv_with_atom("ni_pdf_" + tag + ".csv", pdf, cap_atom));
    out.push_back(curve_csv("ni_cdf_" + tag + ".csv", cdf));
}

inline void append_sinr_curve(std::vector<NamedCsv>& out, const ScenarioParams& sc) {
    const auto pdf = evaluate_curve(sinr_pdf_multi(sc), sinr_grid(sc), "sinr pdf " + sc.id());
    out.push_back(curve_csv("sinr_pdf_" + scenario_tag(sc) + ".csv", pdf));
}

inline void append_capacity_curve(std::vector<NamedCsv>& out, const ScenarioParams& sc) {
    const auto grid = linspace(0.0, std::log1p(sinr_upper_cutoff(sc, 1e-3)), 501);
    const auto pdf = evaluate_curve(capacity_pdf(sc), grid, "capacity pdf " + sc.id());
    out.push_back(curve_csv("capacity_pdf_" + scenario_tag(sc) + ".csv", pdf));
}

// Sweep of a scalar metric against the interference temperature for the
// two reference transmit powers.
template <class MetricFn>
inline void append_q_sweeps(std::vector<NamedCsv>& out, const RunConfig& cfg,
                            const std::string& stem, MetricFn&& metric) {
    const auto qs = cfg.q_grid.empty() ? default_q_grid() : cfg.q_grid;
    if (qs.empty()) throw ConfigError(stem + ": empty sweep range");
    for (double p : {2.0, 4.0}) {
        CsvBuilder csv({"x", "value"});
        for (double q : qs) {
            ScenarioParams sc = cfg.scenario;
            sc.peak_power = p;
            sc.interference_temp = q;
            csv.row_values({q, metric(sc)});
        }
        out.push_back({stem + "_p" + tag_number(p) + ".csv", csv.str()});
    }
}

}  // namespace detail

/// Theoretical curves for one config: the figure families when a preset is
/// selected, otherwise the configured scenario's own laws.
inline std::vector<NamedCsv> analyze_outputs(const RunConfig& cfg) {
    std::vector<NamedCsv> out;
    switch (cfg.figure) {
        case 2:
        case 3: {  // NI pdf + cdf for n = 1, 2, 3
            for (int n : {1, 2, 3}) {
                ScenarioParams sc = cfg.scenario;
                sc.su_count = n;
                detail::append_ni_curves(out, sc);
            }
            break;
        }
        case 4: {  // SINR pdf, both power/cap orderings, n = 1, 2, 3
            for (const auto& base : detail::power_cap_pair(cfg.scenario))
                for (int n : {1, 2, 3}) {
                    ScenarioParams sc = base;
                    sc.su_count = n;
                    detail::append_sinr_curve(out, sc);
                }
            break;
        }
        case 5: {
            detail::append_q_sweeps(out, cfg, "mean_sinr_vs_q", [](const ScenarioParams& sc) {
                return sc.unit_rate() && sc.su_count == 1 ? mean_sinr(sc) : mean_sinr_numeric(sc);
            });
            break;
        }
        case 6: {
            const auto psis = cfg.psi_grid.empty() ? default_psi_grid() : cfg.psi_grid;
            if (psis.empty()) throw ConfigError("figure 6: empty threshold grid");
            for (const auto& sc : detail::power_cap_pair(cfg.scenario)) {
                CsvBuilder csv({"x", "value"});
                for (double psi : psis) {
                    const double v = sc.unit_rate() && sc.su_count == 1
                                         ? outage_probability(sc, psi)
                                         : outage_numeric(sc, psi);
                    csv.row_values({psi, v});
                }
                out.push_back({"outage_vs_psi_" + detail::scenario_tag(sc) + ".csv", csv.str()});
            }
            break;
        }
        case 7: {
            if (!cfg.scenario.unit_rate())
                throw ConfigError("figure 7 needs lambda1 = lambda2 = sigma2 = 1 "
                                  "(capacity density is defined for the unit-rate scenario)");
            for (const auto& sc : detail::power_cap_pair(cfg.scenario))
                detail::append_capacity_curve(out, sc);
            break;
        }
        case 8: {
            detail::append_q_sweeps(out, cfg, "mean_capacity_vs_q", [](const ScenarioParams& sc) {
                return sc.unit_rate() && sc.su_count == 1 ? mean_capacity(sc)
                                                          : mean_capacity_numeric(sc);
            });
            break;
        }
        default: {  // no preset: the configured scenario's own curves
            detail::append_ni_curves(out, cfg.scenario);
            detail::append_sinr_curve(out, cfg.scenario);
            if (cfg.scenario.unit_rate() && cfg.scenario.su_count == 1)
                detail::append_capacity_curve(out, cfg.scenario);
            break;
        }
    }
    return out;
}

namespace detail {

struct SimRun {
    ScenarioParams scenario;
    bool sinr = false;  // else noise-plus-interference
};

inline std::vector<SimRun> simulation_plan(const RunConfig& cfg) {
    std::vector<SimRun> plan;
    switch (cfg.figure) {
        case 2:
        case 3:
            for (int n : {1, 2, 3}) {
                ScenarioParams sc = cfg.scenario;
                sc.su_count = n;
                plan.push_back({sc, false});
            }
            break;
        case 4:
            for (const auto& base : power_cap_pair(cfg.scenario))
                for (int n : {1, 2, 3}) {
                    ScenarioParams sc = base;
                    sc.su_count = n;
                    plan.push_back({sc, true});
                }
            break;
        default:
            plan.push_back({cfg.scenario, false});
            plan.push_back({cfg.scenario, true});
            break;
    }
    return plan;
}

// Theory CDF handle for a simulated law; multi-user SINR has no closed CDF
// and uses a certified numerically integrated table.
inline RealFn theory_cdf_for(const SimRun& run) {
    if (!run.sinr) {
        auto law = std::make_shared<MixedDistribution>(ni_law_multi(run.scenario));
        return [law](double x) { return law->cdf(x); };
    }
    const ScenarioParams sc = run.scenario;
    if (sc.unit_rate() && sc.su_count == 1)
        return [sc](double z) { return z <= 0.0 ? 0.0 : outage_probability(sc, z); };
    const double hi = sinr_upper_cutoff(sc, 1e-9);
    auto table = std::make_shared<TabulatedCdf>(sinr_pdf_multi(sc), 0.0, hi);
    return [table](double z) { return (*table)(z); };
}

}  // namespace detail

/// Deterministic simulation outputs for one config: per run a histogram CSV
/// and a gridded ECDF-vs-theory CSV, plus one summary CSV with the atom
/// frequency and KS distance of every run. Identical bytes for identical
/// (seed, samples, scenario) regardless of the worker count.
inline std::vector<NamedCsv> simulate_outputs(const RunConfig& cfg) {
    SimConfig sim{cfg.samples, cfg.seed, cfg.workers, cfg.bins};
    std::vector<NamedCsv> out;
    CsvBuilder summary({"run", "kind", "p", "q", "sigma2", "n_su", "samples", "seed", "mean",
                        "standard_error", "atom_frequency", "atom_mass_theory", "ks_statistic"});
    for (const auto& run : detail::simulation_plan(cfg)) {
        const auto emp = run.sinr ? simulate_sinr(run.scenario, sim) : simulate_ni(run.scenario, sim);
        const std::string kind = run.sinr ? "sinr" : "ni";
        const std::string tag = "sim_" + kind + "_" + detail::scenario_tag(run.scenario);
        const auto theory_cdf = detail::theory_cdf_for(run);

        CsvBuilder hist({"bin_lo", "bin_hi", "count", "density"});
        for (std::size_t i = 0; i + 1 < emp.bin_edges().size(); ++i)
            hist.row({csv_number(emp.bin_edges()[i]), csv_number(emp.bin_edges()[i + 1]),
                      std::to_string(emp.bin_counts()[i]), csv_number(emp.bin_density(i))});
        out.push_back({tag + "_hist.csv", hist.str()});

        CsvBuilder ecdf({"x", "ecdf", "theory_cdf", "abs_diff"});
        const double grid_lo = emp.sorted_samples().front();
        double grid_hi = emp.quantile(0.9999);
        if (!(grid_hi > grid_lo)) grid_hi = grid_lo + 1.0;  // all-atom sample sets
        const auto grid = linspace(grid_lo, grid_hi, 1001);
        for (double x : grid) {
            const double e = emp.ecdf(x);
            const double t = theory_cdf(x);
            ecdf.row_values({x, e, t, std::fabs(e - t)});
        }
        out.push_back({tag + "_ecdf.csv", ecdf.str()});

        double atom_mass = 0.0;
        if (!run.sinr) {
            const auto law = ni_law_multi(run.scenario);
            atom_mass = law.atom_mass_at(law.continuous_hi());
        }
        summary.row({tag, kind, csv_number(run.scenario.peak_power),
                     csv_number(run.scenario.interference_temp),
                     csv_number(run.scenario.noise_power), std::to_string(run.scenario.su_count),
                     std::to_string(sim.samples), std::to_string(sim.seed), csv_number(emp.mean()),
                     csv_number(emp.standard_error()), csv_number(emp.atom_frequency()),
                     csv_number(atom_mass), csv_number(ks_statistic(emp, theory_cdf))});
    }
    out.push_back({"sim_summary.csv", summary.str()});
    return out;
}

}  // namespace cri
