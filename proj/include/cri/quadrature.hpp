#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cri/mixed_distribution.hpp"

namespace cri {

/// Thrown when a numerical routine cannot certify its result.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated bound on |value - true integral|
    std::uint64_t evaluations = 0;
    bool converged = false;
};

/// Exponential envelope hint for semi-infinite integrands:
/// |f(t)| <= amplitude * (1 + t) * exp(-rate * t) for all t at or beyond
/// the lower limit. Used to place a certified truncation point.
struct ExpDecayHint {
    double rate;
    double amplitude = 1.0;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1]. Odd-index nodes are the Gauss points.
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_kronrod_w[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_gauss_w[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

inline Panel gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double kronrod = gk_kronrod_w[7] * f_mid;
    double gauss = gk_gauss_w[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += gk_kronrod_w[i] * pair;
        if (i % 2 == 1) gauss += gk_gauss_w[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    double err = std::fabs(kronrod - gauss);
    if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
    return {a, b, kronrod, err};
}

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `tol` (absolute) or the evaluation budget runs out;
/// in the latter case the result carries `converged = false` rather than a
/// silently bad value.
inline QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-10, std::uint64_t max_evaluations = 2'000'000) {
    if (!(a <= b)) throw std::invalid_argument("integrate: bounds must satisfy a <= b");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }

    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> active;
    std::vector<detail::Panel> frozen;  // panels too narrow to bisect further
    active.push(detail::gk15_panel(f, a, b));
    result.evaluations = 15;
    double total_error = active.top().error;

    while (total_error > tol && !active.empty() && result.evaluations + 30 <= max_evaluations) {
        const detail::Panel worst = active.top();
        active.pop();
        const double width = worst.b - worst.a;
        const double scale = std::max({std::fabs(worst.a), std::fabs(worst.b), 1.0});
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::gk15_panel(f, worst.a, mid);
        const auto right = detail::gk15_panel(f, mid, worst.b);
        result.evaluations += 30;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
    }

    long double value = 0.0L;
    long double error = 0.0L;
    for (const auto& p : frozen) {
        value += p.value;
        error += p.error;
    }
    while (!active.empty()) {
        value += active.top().value;
        error += active.top().error;
        active.pop();
    }
    result.value = static_cast<double>(value);
    result.abs_error = static_cast<double>(error);
    result.converged = std::isfinite(result.value) && result.abs_error <= tol;
    return result;
}

/// Integral of f over [a, inf) for integrands with a known exponential
/// envelope. The interval is truncated where the envelope's tail integral
/// falls below 1e-14 (or a tenth of `tol` if tighter); the truncation bound
/// is folded into the reported error.
inline QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                                double tol, ExpDecayHint hint,
                                                std::uint64_t max_evaluations = 2'000'000) {
    if (!(hint.rate > 0.0) || !(hint.amplitude >= 0.0))
        throw std::invalid_argument("integrate_semi_infinite: invalid decay hint");
    const double target = std::min(tol * 0.1, 1e-14);
    const double r = hint.rate;
    auto tail_bound = [&](double t) {
        return hint.amplitude * std::exp(-r * t) * ((1.0 + t) / r + 1.0 / (r * r));
    };
    double cut = std::max(a, 0.0) + 35.0 / r;
    for (int i = 0; i < 64 && hint.amplitude > 0.0; ++i) {
        const double poly = hint.amplitude * ((1.0 + cut) / r + 1.0 / (r * r));
        const double next = (std::log(poly) - std::log(target)) / r;
        if (!(next > cut)) break;
        cut = next;
    }
    cut = std::max(cut, a + 1.0 / r);
    auto result = integrate(f, a, cut, tol, max_evaluations);
    result.abs_error += tail_bound(cut);
    return result;
}

/// Cumulative distribution obtained by integrating a density numerically on
/// a uniform knot grid (one Gauss-Kronrod panel per cell, running sums kept
/// in extended precision). Evaluation interpolates linearly between knots;
/// `abs_error()` reports the accumulated quadrature estimate.
class TabulatedCdf {
public:
    TabulatedCdf(const RealFn& density, double lo, double hi, std::size_t cells = 20'000)
        : lo_(lo), hi_(hi) {
        if (!(hi > lo)) throw std::invalid_argument("TabulatedCdf: empty interval");
        if (cells < 1) throw std::invalid_argument("TabulatedCdf: need at least one cell");
        step_ = (hi - lo) / static_cast<double>(cells);
        cum_.resize(cells + 1);
        cum_[0] = 0.0;
        long double run = 0.0L;
        long double err = 0.0L;
        for (std::size_t i = 0; i < cells; ++i) {
            const double x0 = lo + step_ * static_cast<double>(i);
            const double x1 = (i + 1 == cells) ? hi : x0 + step_;
            const auto panel = detail::gk15_panel(density, x0, x1);
            run += panel.value;
            err += panel.error;
            cum_[i + 1] = static_cast<double>(run);
        }
        abs_error_ = static_cast<double>(err);
    }

    double operator()(double x) const {
        if (x <= lo_) return 0.0;
        if (x >= hi_) return cum_.back();
        const double pos = (x - lo_) / step_;
        auto idx = static_cast<std::size_t>(pos);
        if (idx >= cum_.size() - 1) idx = cum_.size() - 2;
        const double frac = pos - static_cast<double>(idx);
        return cum_[idx] + (cum_[idx + 1] - cum_[idx]) * frac;
    }

    double total() const { return cum_.back(); }
    double abs_error() const { return abs_error_; }

private:
    double lo_, hi_, step_;
    double abs_error_ = 0.0;
    std::vector<double> cum_;
};

/// Density of the ratio Z = X / Y at z, evaluated directly from the defining
/// integral with X ~ Exp(numerator_rate / peak_power) (a channel gain scaled
/// by the transmit power) and Y drawn from a mixed law:
///
///   f_Z(z) = int y f_X(y z) dF_Y(y)
///
/// The continuous part is integrated segment by segment (split at every
/// density discontinuity and atom location) and each atom contributes
/// y * f_X(y z) * mass exactly. This is the independent ground truth the
/// closed-form SINR densities are certified against.
inline double ratio_density(double numerator_rate, double peak_power, const MixedDistribution& law,
                            double z, double tol = 1e-12) {
    if (!(numerator_rate > 0.0) || !(peak_power > 0.0))
        throw std::invalid_argument("ratio_density: rates must be positive");
    if (!(z >= 0.0)) throw std::domain_error("ratio_density: z must be nonnegative");
    if (!std::isfinite(law.continuous_hi()))
        throw NumericError("ratio_density: law must have compact continuous support");

    const double rate = numerator_rate / peak_power;
    auto numerator_pdf = [rate](double u) { return rate * std::exp(-rate * u); };

    const auto cuts = law.quadrature_segments();
    const double seg_tol = tol / static_cast<double>(cuts.size());
    long double value = 0.0L;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto integrand = [&](double y) { return y * numerator_pdf(y * z) * law.continuous_pdf(y); };
        const auto res = integrate(integrand, cuts[i], cuts[i + 1], seg_tol);
        if (!res.converged)
            throw NumericError("ratio_density: quadrature failed on [" + std::to_string(cuts[i]) +
                               ", " + std::to_string(cuts[i + 1]) + "]");
        value += res.value;
    }
    for (const Atom& atom : law.atoms())
        value += atom.location * numerator_pdf(atom.location * z) * atom.mass;
    return static_cast<double>(value);
}

enum class MeanWeight { unit, identity, log1p };

/// int_0^inf w(z) f(z) dz for a density with a known exponential envelope
/// (`unit` serves normalization checks, `identity` the mean, `log1p` the
/// mean capacity).
inline QuadratureResult functional_mean(const RealFn& density, MeanWeight weight,
                                        ExpDecayHint density_envelope, double tol = 1e-10) {
    RealFn integrand;
    switch (weight) {
        case MeanWeight::unit:
            integrand = density;
            break;
        case MeanWeight::identity:
            integrand = [density](double z) { return z * density(z); };
            break;
        case MeanWeight::log1p:
            integrand = [density](double z) { return std::log1p(z) * density(z); };
            break;
    }
    return integrate_semi_infinite(integrand, 0.0, tol, density_envelope);
}

}  // namespace cri
