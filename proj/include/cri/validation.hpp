#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cri/analytic.hpp"
#include "cri/figures.hpp"
#include "cri/montecarlo.hpp"
#include "cri/quadrature.hpp"

namespace cri {

/// One theory-versus-ground-truth comparison. For agreement rows `theory`
/// and `oracle` hold the two values; for property rows `theory` holds the
/// measured discrepancy (or margin) and `oracle` its required bound.
struct ValidationRow {
    std::string metric;
    std::string scenario;
    double theory = 0.0;
    double oracle = 0.0;
    std::optional<double> simulation;
    std::optional<double> sim_se;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;

    int total() const { return static_cast<int>(rows.size()); }
    int passed() const {
        int n = 0;
        for (const auto& r : rows) n += r.pass ? 1 : 0;
        return n;
    }
    bool all_pass() const { return passed() == total(); }
};

struct ValidationConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 123456789;
    unsigned workers = 1;
    bool quick = false;  // smaller sample count, thinner grids
};

/// |theory - oracle| <= tolerance, with non-finite values always failing.
inline ValidationRow comparison_row(std::string metric, std::string scenario, double theory,
                                    double oracle, double tolerance) {
    ValidationRow row{std::move(metric), std::move(scenario), theory, oracle,
                      std::nullopt,      std::nullopt,        tolerance};
    row.pass = std::isfinite(theory) && std::isfinite(oracle) &&
               std::fabs(theory - oracle) <= tolerance;
    return row;
}

/// Simulation agreement: |simulation - theory| <= tolerance.
inline ValidationRow simulation_row(std::string metric, std::string scenario, double theory,
                                    double simulation, double se, double tolerance) {
    ValidationRow row{std::move(metric), std::move(scenario), theory, theory,
                      simulation,        se,                  tolerance};
    row.pass = std::isfinite(theory) && std::isfinite(simulation) &&
               std::fabs(simulation - theory) <= tolerance;
    return row;
}

namespace detail {

inline double ni_total_mass(const MixedDistribution& law, double tol) {
    const auto cuts = law.quadrature_segments();
    double total = law.total_atom_mass();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto r = integrate([&law](double x) { return law.continuous_pdf(x); }, cuts[i],
                                 cuts[i + 1], tol);
        total += r.value;
    }
    return total;
}

inline double sup_abs_diff(const RealFn& f, const RealFn& g, const std::vector<double>& grid) {
    double sup = 0.0;
    for (double x : grid) sup = std::max(sup, std::fabs(f(x) - g(x)));
    return sup;
}

// KS acceptance bound: 0.005 at 1e6 samples, scaled as 1/sqrt(n) elsewhere.
inline double ks_tolerance(std::uint64_t samples) {
    return 0.005 * std::sqrt(1e6 / static_cast<double>(samples));
}

inline ScenarioParams unit_scenario(double p, double q, int n = 1) {
    ScenarioParams sc;
    sc.peak_power = p;
    sc.interference_temp = q;
    sc.su_count = n;
    return sc;
}

}  // namespace detail

/// Runs the full agreement grid: normalizations, every closed form against
/// its quadrature oracle, Monte Carlo KS/atom/moment checks, reduction and
/// determinism properties, and the special-function identities. Nonzero
/// exit from the CLI when any row fails.
inline ValidationReport run_validation(const ValidationConfig& cfg) {
    ValidationReport report;
    const auto push = [&report](ValidationRow row) { report.rows.push_back(std::move(row)); };

    const std::vector<double> pq_axis =
        cfg.quick ? std::vector<double>{2.0, 4.0} : std::vector<double>{0.5, 1.0, 2.0, 4.0};
    const std::vector<std::pair<double, double>> contrast_pairs = {{4.0, 2.0}, {2.0, 4.0}};
    const std::vector<std::pair<double, double>> metric_pairs = {
        {2.0, 4.0}, {4.0, 2.0}, {2.0, 2.0}, {4.0, 4.0}};

    // --- normalization of every law on the grid ---
    for (double p : pq_axis)
        for (double q : pq_axis)
            for (int n : {1, 2, 3}) {
                const auto sc = detail::unit_scenario(p, q, n);
                push(comparison_row("ni law total mass", sc.id(),
                                    detail::ni_total_mass(ni_law_multi(sc), 1e-11), 1.0, 1e-8));
                const auto norm = functional_mean(sinr_pdf_multi(sc), MeanWeight::unit,
                                                  sinr_density_envelope(sc), 1e-10);
                push(comparison_row("sinr pdf total mass", sc.id(), norm.value, 1.0, 1e-8));
            }

    // --- closed-form SINR densities against the ratio-integral oracle ---
    const auto z_grid = linspace(0.0, 50.0, cfg.quick ? 51 : 201);
    for (const auto& [p, q] : contrast_pairs)
        for (int n : {1, 2, 3}) {
            const auto sc = detail::unit_scenario(p, q, n);
            const auto law = ni_law_multi(sc);
            const auto pdf = sinr_pdf_multi(sc);
            double sup = 0.0;
            for (double z : z_grid)
                sup = std::max(sup, std::fabs(pdf(z) - ratio_density(sc.pu_rate, sc.peak_power,
                                                                     law, z)));
            push(comparison_row("sinr pdf vs ratio integral (sup)", sc.id(), sup, 0.0, 1e-8));
        }
    {
        // general (non-unit) rates exercise the decay-rate resolution hardest
        ScenarioParams sc;
        sc.peak_power = 3.0;
        sc.interference_temp = 2.0;
        sc.noise_power = 1.5;
        sc.pu_rate = 2.0;
        sc.su_rate = 0.7;
        const auto law = ni_law_single(sc);
        const auto pdf = sinr_pdf_single(sc);
        double sup = 0.0;
        for (double z : z_grid)
            sup = std::max(sup,
                           std::fabs(pdf(z) - ratio_density(sc.pu_rate, sc.peak_power, law, z)));
        push(comparison_row("sinr pdf vs ratio integral (sup)", sc.id(), sup, 0.0, 1e-8));
    }

    // --- mean SINR ---
    for (const auto& [p, q] : metric_pairs) {
        const auto sc = detail::unit_scenario(p, q);
        const auto oracle = functional_mean(sinr_pdf_single_unit(sc), MeanWeight::identity,
                                            sinr_density_envelope(sc), 1e-10);
        push(comparison_row("mean sinr closed vs quadrature", sc.id(), mean_sinr(sc),
                            oracle.value, 1e-8));
    }
    {
        double min_margin = std::numeric_limits<double>::infinity();
        for (double q : default_q_grid()) {
            const double hi = mean_sinr(detail::unit_scenario(4.0, q));
            const double lo = mean_sinr(detail::unit_scenario(2.0, q));
            min_margin = std::min(min_margin, hi - lo);
        }
        ValidationRow row{"mean sinr ordering margin (p=4 over p=2)", "q in (0,10]",
                          min_margin,   0.0,
                          std::nullopt, std::nullopt,
                          0.0,          min_margin > 0.0};
        push(row);
    }

    // --- outage ---
    for (const auto& [p, q] : metric_pairs)
        for (double psi : {0.5, 1.0, 2.0, 4.0}) {
            const auto sc = detail::unit_scenario(p, q);
            const auto oracle = integrate(sinr_pdf_single_unit(sc), 0.0, psi, 1e-11);
            std::ostringstream id;
            id << sc.id() << " psi=" << psi;
            push(comparison_row("outage closed vs quadrature", id.str(),
                                outage_probability(sc, psi), oracle.value, 1e-8));
        }
    {
        double min_margin = std::numeric_limits<double>::infinity();
        for (double psi : default_psi_grid())
            min_margin =
                std::min(min_margin, outage_probability(detail::unit_scenario(2.0, 4.0), psi) -
                                         outage_probability(detail::unit_scenario(4.0, 2.0), psi));
        ValidationRow row{"outage ordering margin (p<q over p>q)", "psi in [0,4]",
                          min_margin,   0.0,
                          std::nullopt, std::nullopt,
                          0.0,          min_margin >= 0.0};
        push(row);
    }

    // --- mean capacity and the capacity-pdf crossing ---
    for (const auto& [p, q] : metric_pairs) {
        const auto sc = detail::unit_scenario(p, q);
        const auto oracle = functional_mean(sinr_pdf_single_unit(sc), MeanWeight::log1p,
                                            sinr_density_envelope(sc), 1e-10);
        push(comparison_row("mean capacity closed vs quadrature", sc.id(), mean_capacity(sc),
                            oracle.value, 1e-8));
    }
    {
        const auto cap_lo = capacity_pdf(detail::unit_scenario(2.0, 4.0));
        const auto cap_hi = capacity_pdf(detail::unit_scenario(4.0, 2.0));
        bool crossed = false;
        double prev = cap_lo(0.01) - cap_hi(0.01);
        for (double x : linspace(0.01, 4.0, 400)) {
            const double diff = cap_lo(x) - cap_hi(x);
            if (diff * prev < 0.0) crossed = true;
            prev = diff;
        }
        ValidationRow row{"capacity pdf curves cross", "(2,4) vs (4,2), x in (0,4)",
                          crossed ? 1.0 : 0.0,
                          1.0,
                          std::nullopt,
                          std::nullopt,
                          0.0,
                          crossed};
        push(row);
    }

    // --- Monte Carlo agreement ---
    SimConfig sim{cfg.quick ? std::min<std::uint64_t>(cfg.samples, 100'000) : cfg.samples,
                  cfg.seed, cfg.workers, 200};
    const double ks_tol = detail::ks_tolerance(sim.samples);
    for (const auto& [p, q] : contrast_pairs)
        for (int n : {1, 2, 3}) {
            const auto sc = detail::unit_scenario(p, q, n);
            const auto law = ni_law_multi(sc);
            const auto emp = simulate_ni(sc, sim);
            push(simulation_row("ni ecdf vs cdf (ks)", sc.id(), 0.0,
                                ks_statistic(emp, [&law](double x) { return law.cdf(x); }), 0.0,
                                ks_tol));
            const double mass = law.atom_mass_at(law.continuous_hi());
            const double binom_sigma =
                std::sqrt(mass * (1.0 - mass) / static_cast<double>(sim.samples));
            push(simulation_row("atom frequency vs mass", sc.id(), mass, emp.atom_frequency(),
                                binom_sigma, 3.0 * binom_sigma));

            const auto sinr_emp = simulate_sinr(sc, sim);
            const auto cdf = detail::theory_cdf_for({sc, true});
            push(simulation_row("sinr ecdf vs cdf (ks)", sc.id(), 0.0,
                                ks_statistic(sinr_emp, cdf), 0.0, ks_tol));
            if (n == 1) {
                push(simulation_row("mean sinr vs sample mean", sc.id(), mean_sinr(sc),
                                    sinr_emp.mean(), sinr_emp.standard_error(),
                                    3.0 * sinr_emp.standard_error()));
                const double mc_tol = 0.003 * std::sqrt(1e6 / static_cast<double>(sim.samples));
                push(simulation_row("outage psi=1 vs sample fraction", sc.id(),
                                    outage_probability(sc, 1.0), outage_estimate(sinr_emp, 1.0),
                                    0.0, mc_tol));
                const auto cap = capacity_transform(sinr_emp);
                push(simulation_row("mean capacity vs sample mean", sc.id(), mean_capacity(sc),
                                    cap.mean(), cap.standard_error(),
                                    3.0 * cap.standard_error()));
            }
        }

    // --- n = 1 reduction chain ---
    {
        const auto sc = detail::unit_scenario(4.0, 2.0, 1);
        const auto single_law = ni_law_single(sc);
        const auto multi_law = ni_law_multi(sc);
        const auto x_grid = linspace(sc.noise_power, sc.cap_location() + 1.0, 400);
        double sup = 0.0;
        for (double x : x_grid) {
            sup = std::max(sup, std::fabs(single_law.continuous_pdf(x) - multi_law.continuous_pdf(x)));
            sup = std::max(sup, std::fabs(single_law.cdf(x) - multi_law.cdf(x)));
        }
        push(comparison_row("ni multi(n=1) vs single (sup)", sc.id(), sup, 0.0, 1e-12));
        push(comparison_row("sinr multi(n=1) vs single (sup)", sc.id(),
                            detail::sup_abs_diff(sinr_pdf_multi(sc), sinr_pdf_single(sc), z_grid),
                            0.0, 1e-10));
        push(comparison_row("sinr single vs unit form (sup)", sc.id(),
                            detail::sup_abs_diff(sinr_pdf_single(sc), sinr_pdf_single_unit(sc),
                                                 z_grid),
                            0.0, 1e-12));
    }

    // --- determinism across worker counts (exact CSV bytes) ---
    {
        RunConfig rc;
        rc.scenario = detail::unit_scenario(4.0, 2.0, 2);
        rc.samples = cfg.quick ? 100'000 : 250'000;
        rc.seed = cfg.seed;
        bool identical = true;
        rc.workers = 1;
        const auto reference = simulate_outputs(rc);
        for (unsigned w : {4u, 16u}) {
            rc.workers = w;
            const auto other = simulate_outputs(rc);
            identical = identical && other.size() == reference.size();
            for (std::size_t i = 0; identical && i < reference.size(); ++i)
                identical = reference[i].filename == other[i].filename &&
                            reference[i].content == other[i].content;
        }
        ValidationRow row{"simulate csv bytes independent of workers", "workers 1/4/16",
                          identical ? 1.0 : 0.0,
                          1.0,
                          std::nullopt,
                          std::nullopt,
                          0.0,
                          identical};
        push(row);
    }

    // --- special functions ---
    {
        double worst = 0.0;
        for (double a : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 0.5, 2.5, 7.3}) {
            for (double x = 0.01; x <= 50.0; x *= 1.6) {
                const double lhs = upper_incomplete_gamma(a + 1.0, x);
                const double rhs = a * upper_incomplete_gamma(a, x) + std::pow(x, a) * std::exp(-x);
                worst = std::max(worst, std::fabs(lhs - rhs) / std::fabs(lhs));
            }
        }
        push(comparison_row("gamma recurrence max rel err", "a in {1..10} + noninteger", worst,
                            0.0, 1e-10));

        ChunkRng rng(cfg.seed, 0);
        bool bounded = true;
        for (int i = 0; i < 1000; ++i) {
            const double x = 0.01 + 100.0 * rng.next_uniform();
            const double e1 = exp_integral_e1(x);
            const double upper = std::exp(-x) * std::log1p(1.0 / x);
            const double lower = 0.5 * std::exp(-x) * std::log1p(2.0 / x);
            bounded = bounded && e1 <= upper * (1.0 + 1e-12) && e1 >= lower * (1.0 - 1e-12);
        }
        ValidationRow row{"exp integral two-sided bound", "1000 random x > 0",
                          bounded ? 1.0 : 0.0,
                          1.0,
                          std::nullopt,
                          std::nullopt,
                          0.0,
                          bounded};
        push(row);

        double cf_worst = 0.0;
        for (double x = 1.0; x <= 50.0; x *= 1.5)
            cf_worst = std::max(cf_worst, std::fabs(detail::upper_gamma_cf(0.0, x) -
                                                    exp_integral_e1(x)) /
                                              exp_integral_e1(x));
        push(comparison_row("exp integral vs cf at shape 0", "x in [1, 50]", cf_worst, 0.0,
                            1e-10));
    }

    return report;
}

/// Fixed-width table for terminal output, one line per row plus a summary.
inline std::string render_report_table(const ValidationReport& report) {
    std::ostringstream out;
    char line[512];
    std::snprintf(line, sizeof line, "%-42s %-34s %13s %13s %13s %10s %s\n", "metric", "scenario",
                  "theory", "oracle", "simulation", "tolerance", "result");
    out << line;
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%-42s %-34s %13.6g %13.6g %13s %10.3g %s\n",
                      r.metric.c_str(), r.scenario.c_str(), r.theory, r.oracle,
                      r.simulation ? csv_number(*r.simulation).c_str() : "-", r.tolerance,
                      r.pass ? "pass" : "FAIL");
        out << line;
    }
    out << "\n" << report.passed() << "/" << report.total() << " checks passed\n";
    return out.str();
}

}  // namespace cri
