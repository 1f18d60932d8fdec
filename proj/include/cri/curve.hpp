#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cri/mixed_distribution.hpp"
#include "cri/quadrature.hpp"

namespace cri {

/// An evaluated theoretical curve, the unit every figure CSV is built from.
struct DensityCurve {
    std::vector<double> grid;    // strictly increasing
    std::vector<double> values;  // same length, finite
    std::string label;
};

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw std::invalid_argument("linspace: need at least two points");
    if (!(hi > lo)) throw std::invalid_argument("linspace: empty range");
    std::vector<double> grid(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

inline DensityCurve evaluate_curve(const RealFn& f, std::vector<double> grid, std::string label) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("evaluate_curve: grid must be strictly increasing");
    DensityCurve curve{std::move(grid), {}, std::move(label)};
    curve.values.reserve(curve.grid.size());
    for (double x : curve.grid) {
        const double v = f(x);
        if (!std::isfinite(v))
            throw NumericError("evaluate_curve: non-finite value in curve '" + curve.label + "'");
        curve.values.push_back(v);
    }
    return curve;
}

}  // namespace cri
