#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rvol {

/// Values sampled on the uniform grid t_i = i * dt, i = 0..n_steps.
struct SampledPath {
    double dt = 0.0;
    std::vector<double> values;

    SampledPath() = default;
    SampledPath(double step, std::size_t n_steps, double fill = 0.0)
        : dt(step), values(n_steps + 1, fill) {
        if (!(step > 0.0)) throw std::invalid_argument("SampledPath: dt must be positive");
    }

    /// Construct from an explicit grid, validating uniformity (1e-12 relative).
    static SampledPath from_grid(const std::vector<double>& grid, std::vector<double> vals) {
        if (grid.size() < 2) throw std::invalid_argument("SampledPath: need at least two grid points");
        if (grid.size() != vals.size())
            throw std::invalid_argument("SampledPath: grid/value length mismatch");
        if (std::abs(grid.front()) > 1e-12)
            throw std::invalid_argument("SampledPath: grid must start at 0");
        const double step = grid[1] - grid[0];
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double d = grid[i + 1] - grid[i];
            if (std::abs(d - step) > 1e-12 * std::max(std::abs(d), std::abs(step)))
                throw std::invalid_argument("SampledPath: grid must be uniform");
        }
        SampledPath p;
        p.dt = step;
        p.values = std::move(vals);
        return p;
    }

    std::size_t n_steps() const { return values.empty() ? 0 : values.size() - 1; }
    double horizon() const { return dt * static_cast<double>(n_steps()); }
    double time(std::size_t i) const { return dt * static_cast<double>(i); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

}  // namespace rvol
