#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cri {

using RealFn = std::function<double(double)>;

/// A point mass of a mixed probability law.
struct Atom {
    double location;
    double mass;
};

/// Probability law with an absolutely continuous density plus a finite set
/// of point masses, the form taken by the noise-plus-interference laws
/// (the transmit-power cap puts positive probability exactly at the cap).
///
/// Atoms are carried symbolically rather than as narrow density spikes, so
/// normalization and KS comparisons are exact. The density and its running
/// integral are evaluation handles (closures over the scenario constants);
/// `continuous_cdf(x)` must return the integral of `continuous_density`
/// from `support_lo` to x. CDFs follow the right-continuous convention
/// (H(0) = 1): an atom is included at its own location.
class MixedDistribution {
public:
    MixedDistribution(double support_lo, RealFn continuous_density, RealFn continuous_cdf,
                      std::vector<Atom> atoms, std::vector<double> density_breakpoints,
                      double continuous_hi, std::string label)
        : support_lo_(support_lo),
          continuous_hi_(continuous_hi),
          density_(std::move(continuous_density)),
          continuous_cdf_(std::move(continuous_cdf)),
          atoms_(std::move(atoms)),
          breakpoints_(std::move(density_breakpoints)),
          label_(std::move(label)) {
        if (!density_ || !continuous_cdf_)
            throw std::invalid_argument("MixedDistribution: null evaluation handle");
        if (!(continuous_hi_ >= support_lo_))
            throw std::invalid_argument("MixedDistribution: empty support");
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.location < b.location; });
        double total_mass = 0.0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            const Atom& a = atoms_[i];
            if (!(a.mass > 0.0) || !(a.mass <= 1.0))
                throw std::invalid_argument("MixedDistribution: atom mass must be in (0, 1]");
            if (a.location < support_lo_)
                throw std::invalid_argument("MixedDistribution: atom below support");
            if (i > 0 && !(atoms_[i - 1].location < a.location))
                throw std::invalid_argument("MixedDistribution: atom locations must be distinct");
            total_mass += a.mass;
        }
        if (total_mass > 1.0 + 1e-12)
            throw std::invalid_argument("MixedDistribution: atom masses exceed 1");
        std::sort(breakpoints_.begin(), breakpoints_.end());
    }

    /// Right-continuous CDF: continuous integral up to x plus every atom at
    /// or below x. Zero below the support.
    double cdf(double x) const {
        if (x < support_lo_) return 0.0;
        double value = continuous_cdf_(x);
        for (const Atom& a : atoms_) {
            if (a.location > x) break;
            value += a.mass;
        }
        return value;
    }

    /// Density of the absolutely continuous part; zero below the support.
    double continuous_pdf(double x) const {
        if (x < support_lo_) return 0.0;
        return density_(x);
    }

    /// Mass of the atom located exactly at x, else zero.
    double atom_mass_at(double x) const {
        for (const Atom& a : atoms_) {
            if (a.location == x) return a.mass;
            if (a.location > x) break;
        }
        return 0.0;
    }

    double total_atom_mass() const {
        double m = 0.0;
        for (const Atom& a : atoms_) m += a.mass;
        return m;
    }

    /// Split points for quadrature over the continuous part: the support
    /// interval cut at every density discontinuity and atom location.
    std::vector<double> quadrature_segments() const {
        std::vector<double> pts;
        pts.push_back(support_lo_);
        for (double b : breakpoints_)
            if (b > support_lo_ && b < continuous_hi_) pts.push_back(b);
        for (const Atom& a : atoms_)
            if (a.location > support_lo_ && a.location < continuous_hi_) pts.push_back(a.location);
        pts.push_back(continuous_hi_);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }

    double support_lo() const noexcept { return support_lo_; }
    double continuous_hi() const noexcept { return continuous_hi_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::string& label() const noexcept { return label_; }

private:
    double support_lo_;
    double continuous_hi_;
    RealFn density_;
    RealFn continuous_cdf_;
    std::vector<Atom> atoms_;
    std::vector<double> breakpoints_;
    std::string label_;
};

}  // namespace cri
