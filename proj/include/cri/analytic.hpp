#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "cri/mixed_distribution.hpp"
#include "cri/quadrature.hpp"
#include "cri/scenario.hpp"
#include "cri/special_functions.hpp"

namespace cri {

namespace detail {

inline void require_unit_rate(const ScenarioParams& params, const char* where) {
    if (!params.unit_rate())
        throw std::domain_error(std::string(where) +
                                ": closed form assumes unit rates and unit noise power; "
                                "use the quadrature-backed metric for general parameters");
}

}  // namespace detail

/// Secondary transmit power under peak power adaptation, min{p, q/alpha}.
inline double su_transmit_power(double alpha, const ScenarioParams& params) {
    params.validate();
    if (!(alpha > 0.0)) throw std::domain_error("su_transmit_power: channel gain must be positive");
    return std::min(params.peak_power, params.interference_temp / alpha);
}

/// Noise-plus-interference law for a single secondary user: shifted
/// exponential density on [sigma^2, sigma^2 + q) with rate lambda_2 / p and
/// a point mass of exp(-lambda_2 q / p) where the cap binds.
inline MixedDistribution ni_law_single(const ScenarioParams& params) {
    params.validate();
    const double lo = params.noise_power;
    const double q = params.interference_temp;
    const double rate = params.su_rate_scaled();
    const double cap = params.cap_location();
    RealFn pdf = [lo, cap, rate](double x) {
        if (x < lo || x >= cap) return 0.0;
        return rate * std::exp(-rate * (x - lo));
    };
    RealFn cdf = [lo, cap, rate](double x) {
        if (x <= lo) return 0.0;
        return -std::expm1(-rate * (std::min(x, cap) - lo));
    };
    // the atom vanishes outright once its mass underflows (enormous caps)
    std::vector<Atom> atoms;
    if (const double mass = std::exp(-rate * q); mass > 0.0) atoms.push_back({cap, mass});
    return MixedDistribution(lo, std::move(pdf), std::move(cdf), std::move(atoms), {cap}, cap,
                             "ni single " + params.id());
}

/// Noise-plus-interference law for n secondary users: clipped gamma density
/// (shape n, rate lambda_2 / p) shifted by sigma^2, point mass Q(n, q lambda_2/p)
/// at the cap. Coincides with the single-user law when n = 1.
inline MixedDistribution ni_law_multi(const ScenarioParams& params) {
    params.validate();
    const int n = params.su_count;
    const double lo = params.noise_power;
    const double q = params.interference_temp;
    const double rate = params.su_rate_scaled();
    const double cap = params.cap_location();
    const double norm = std::pow(rate, n) / std::tgamma(static_cast<double>(n));
    RealFn pdf = [lo, cap, rate, n, norm](double x) {
        if (x < lo || x >= cap) return 0.0;
        const double u = x - lo;
        if (n == 1) return rate * std::exp(-rate * u);
        return norm * std::pow(u, n - 1) * std::exp(-rate * u);
    };
    RealFn cdf = [lo, cap, rate, n](double x) {
        if (x <= lo) return 0.0;
        return 1.0 - regularized_upper_gamma(n, rate * (std::min(x, cap) - lo));
    };
    std::vector<Atom> atoms;
    if (const double mass = regularized_upper_gamma(n, rate * q); mass > 0.0)
        atoms.push_back({cap, mass});
    return MixedDistribution(lo, std::move(pdf), std::move(cdf), std::move(atoms), {cap}, cap,
                             "ni multi " + params.id());
}

/// Closed-form SINR density for a single interfering secondary user and
/// arbitrary rates. The combined decay rate of the ratio integrand is
/// lambda_2 + lambda_1 z, which fixes the printed form's ambiguous shorthand;
/// the ratio-integral oracle certifies this resolution (acceptance suite).
inline RealFn sinr_pdf_single(const ScenarioParams& params) {
    params.validate();
    const double p = params.peak_power;
    const double q = params.interference_temp;
    const double s2 = params.noise_power;
    const double l1 = params.pu_rate;
    const double l2 = params.su_rate;
    return [p, q, s2, l1, l2](double z) {
        if (z < 0.0) return 0.0;
        const double lam = l2 + l1 * z;
        const double head = std::exp(-s2 * l1 * z / p) * (s2 + p / lam);
        const double tail =
            std::exp(-(s2 * l1 * z + q * lam) / p) * ((s2 + q) * l1 * z / l2 - p / lam);
        return l1 * l2 / (lam * p) * (head + tail);
    };
}

/// Unit-rate specialization of the single-user SINR density
/// (lambda_1 = lambda_2 = 1, sigma^2 = 1), implemented verbatim.
inline RealFn sinr_pdf_single_unit(const ScenarioParams& params) {
    params.validate();
    detail::require_unit_rate(params, "sinr_pdf_single_unit");
    const double p = params.peak_power;
    const double q = params.interference_temp;
    return [p, q](double z) {
        if (z < 0.0) return 0.0;
        const double zp1 = z + 1.0;
        const double head = std::exp(-z / p) * (1.0 + p / zp1);
        const double tail = std::exp(-(z + q * zp1) / p) * ((1.0 + q) * z - p / zp1);
        return (head + tail) / (p * zp1);
    };
}

/// SINR density under interference from n secondary users. Reduces to the
/// single-user density at n = 1.
inline RealFn sinr_pdf_multi(const ScenarioParams& params) {
    params.validate();
    const int n = params.su_count;
    const double s2 = params.noise_power;
    const double q = params.interference_temp;
    const double su_rate = params.su_rate_scaled();
    const double pu_rate = params.pu_rate_scaled();
    const double cap = params.cap_location();
    const double atom = regularized_upper_gamma(n, su_rate * q);
    const double rate_pow = std::pow(su_rate, n);
    return [n, s2, q, su_rate, pu_rate, cap, atom, rate_pow](double z) {
        if (z < 0.0) return 0.0;
        const double theta = su_rate + pu_rate * z;
        const double tail_n = regularized_upper_gamma(n, q * theta);
        const double tail_n1 = regularized_upper_gamma(n + 1, q * theta);
        const double bracket = n + s2 * theta * (1.0 - tail_n) - n * tail_n1;
        const double continuous =
            pu_rate * rate_pow * std::exp(-s2 * pu_rate * z) * std::pow(theta, -1 - n) * bracket;
        const double capped = pu_rate * cap * atom * std::exp(-pu_rate * cap * z);
        return continuous + capped;
    };
}

/// Mean SINR, unit-rate closed form:
/// e^{1/p} ( E1(1/p) - E1((1+q)/p) ) + p e^{-q/p} / (1+q).
inline double mean_sinr(const ScenarioParams& params) {
    params.validate();
    detail::require_unit_rate(params, "mean_sinr");
    const double p = params.peak_power;
    const double q = params.interference_temp;
    return std::exp(1.0 / p) * (exp_integral_e1(1.0 / p) - exp_integral_e1((1.0 + q) / p)) +
           p * std::exp(-q / p) / (1.0 + q);
}

/// Outage probability, the unit-rate SINR CDF at the threshold:
/// 1 - e^{-psi/p}/(psi+1) (1 + psi e^{-q(psi+1)/p}).
inline double outage_probability(const ScenarioParams& params, double threshold) {
    params.validate();
    detail::require_unit_rate(params, "outage_probability");
    if (!(threshold >= 0.0))
        throw std::domain_error("outage_probability: threshold must be nonnegative");
    const double p = params.peak_power;
    const double q = params.interference_temp;
    const double value = 1.0 - std::exp(-threshold / p) / (threshold + 1.0) *
                                   (1.0 + threshold * std::exp(-q * (threshold + 1.0) / p));
    return std::clamp(value, 0.0, 1.0);
}

/// Density of the instantaneous capacity C = ln(1 + SINR), in nats, by
/// change of variables from the unit-rate SINR density.
inline RealFn capacity_pdf(const ScenarioParams& params) {
    params.validate();
    detail::require_unit_rate(params, "capacity_pdf");
    auto sinr_pdf = sinr_pdf_single_unit(params);
    return [sinr_pdf](double x) {
        if (x < 0.0) return 0.0;
        const double grown = std::expm1(x);
        return sinr_pdf(grown) * (grown + 1.0);
    };
}

/// Mean capacity in nats, unit-rate closed form:
/// 1 - e^{-q/p} + e^{1/p}/p ( (p+q+1) E1((q+1)/p) - E1(1/p) ).
inline double mean_capacity(const ScenarioParams& params) {
    params.validate();
    detail::require_unit_rate(params, "mean_capacity");
    const double p = params.peak_power;
    const double q = params.interference_temp;
    return 1.0 - std::exp(-q / p) +
           std::exp(1.0 / p) / p *
               ((p + q + 1.0) * exp_integral_e1((q + 1.0) / p) - exp_integral_e1(1.0 / p));
}

/// Certified envelope of every SINR density in this family:
/// f_Z(z) = E[Y f_X(Y z)] <= (lambda_1 / p) (sigma^2 + q) e^{-lambda_1 sigma^2 z / p},
/// since Y is confined to [sigma^2, sigma^2 + q].
inline ExpDecayHint sinr_density_envelope(const ScenarioParams& params) {
    return {params.pu_rate * params.noise_power / params.peak_power,
            params.pu_rate * params.cap_location() / params.peak_power};
}

/// z beyond which the SINR law holds less than tail_mass probability:
/// P(Z > z) = E[e^{-lambda_1 z Y / p}] <= e^{-lambda_1 sigma^2 z / p}.
inline double sinr_upper_cutoff(const ScenarioParams& params, double tail_mass = 1e-12) {
    if (!(tail_mass > 0.0) || !(tail_mass < 1.0))
        throw std::invalid_argument("sinr_upper_cutoff: tail mass must be in (0, 1)");
    return -std::log(tail_mass) * params.peak_power / (params.pu_rate * params.noise_power);
}

// Quadrature-backed metrics over the n-user SINR density. These serve the
// parameter ranges the closed forms do not cover (general rates, n > 1).

inline double mean_sinr_numeric(const ScenarioParams& params, double tol = 1e-10) {
    params.validate();
    const auto result =
        functional_mean(sinr_pdf_multi(params), MeanWeight::identity, sinr_density_envelope(params), tol);
    if (!result.converged) throw NumericError("mean_sinr_numeric: quadrature failed");
    return result.value;
}

inline double mean_capacity_numeric(const ScenarioParams& params, double tol = 1e-10) {
    params.validate();
    const auto result =
        functional_mean(sinr_pdf_multi(params), MeanWeight::log1p, sinr_density_envelope(params), tol);
    if (!result.converged) throw NumericError("mean_capacity_numeric: quadrature failed");
    return result.value;
}

inline double outage_numeric(const ScenarioParams& params, double threshold, double tol = 1e-10) {
    params.validate();
    if (!(threshold >= 0.0)) throw std::domain_error("outage_numeric: threshold must be nonnegative");
    // cap the interval where the law's certified tail mass drops below 1e-13,
    // which also keeps the first panels from straddling the entire bulk
    const double upper = std::min(threshold, sinr_upper_cutoff(params, 1e-13));
    const auto result = integrate(sinr_pdf_multi(params), 0.0, upper, tol);
    if (!result.converged) throw NumericError("outage_numeric: quadrature failed");
    return std::clamp(result.value, 0.0, 1.0);
}

}  // namespace cri
