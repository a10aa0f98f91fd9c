#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "roughvol/grid.hpp"
#include "roughvol/kernels.hpp"
#include "roughvol/rng.hpp"

namespace rvol {

/// Monte Carlo driver configuration for the correlated pair (W, W_perp) and
/// Z = rho W + sqrt(1-rho^2) W_perp on a uniform grid.
struct DriverConfig {
    std::size_t n_steps = 256;
    double horizon = 1.0;
    std::size_t n_paths = 1;
    double rho = 0.0;
    double hurst = 0.1;
    std::uint64_t seed = 0;
    bool antithetic = false;  // second half of paths mirrors the first half

    void validate() const {
        if (n_steps < 1) throw std::invalid_argument("DriverConfig: n_steps must be >= 1");
        if (n_paths < 1) throw std::invalid_argument("DriverConfig: n_paths must be >= 1");
        if (!(horizon > 0.0)) throw std::invalid_argument("DriverConfig: horizon must be > 0");
        if (!(rho >= -1.0 && rho <= 1.0))
            throw std::invalid_argument("DriverConfig: rho must lie in [-1, 1]");
        if (antithetic && n_paths % 2 != 0)
            throw std::invalid_argument("DriverConfig: antithetic requires an even path count");
    }
    double dt() const { return horizon / static_cast<double>(n_steps); }
};

struct DriverPaths {
    double dt = 0.0;
    std::vector<SampledPath> w;
    std::vector<SampledPath> w_perp;
    std::vector<SampledPath> z;
};

/// Per-path counter-based stream; draws two normals per step in the order
/// (dW, dW_perp). Extra per-step draws used by premium diffusions come from a
/// disjoint stream so that adding a premium does not perturb the drivers.
RngStream rng_stream(std::uint64_t seed, std::uint64_t path_index);

DriverPaths simulate_drivers(const DriverConfig& cfg);

/// Riemann-Liouville driver Z^H(t_i) = sum_{j<i} (t_i - t_j)^(H-1/2) dZ_j.
SampledPath volterra_path(double hurst, const SampledPath& z);
std::vector<SampledPath> volterra_paths(double hurst, const DriverPaths& drivers);

/// Exact covariance Cov(Z^H_{t_i}, Z^H_{t_j}) of the continuous-time process
/// on the grid interior {t_1, ..., t_n}, by singularity-absorbing quadrature.
Eigen::MatrixXd volterra_covariance(double hurst, std::size_t n_steps, double horizon);

/// Exact-in-law Cholesky simulation of Z^H (test oracle; dense O(n^3)
/// factorization, n <= 8192).
std::vector<SampledPath> volterra_paths_cholesky(const DriverConfig& cfg);

}  // namespace rvol
