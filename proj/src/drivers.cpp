#include "roughvol/drivers.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "roughvol/gfo.hpp"
#include "roughvol/parallel.hpp"
#include "roughvol/quad.hpp"

namespace rvol {

RngStream rng_stream(std::uint64_t seed, std::uint64_t path_index) {
    return RngStream(seed, path_index);
}

DriverPaths simulate_drivers(const DriverConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_steps;
    const double dt = cfg.dt();
    const double sdt = std::sqrt(dt);
    const double rho = cfg.rho;
    const double rho_bar = std::sqrt(std::max(0.0, 1.0 - rho * rho));

    DriverPaths out;
    out.dt = dt;
    out.w.assign(cfg.n_paths, SampledPath(dt, n));
    out.w_perp.assign(cfg.n_paths, SampledPath(dt, n));
    out.z.assign(cfg.n_paths, SampledPath(dt, n));

    const std::size_t base_paths = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
    parallel_for(cfg.n_paths, [&](std::size_t p) {
        const bool mirror = cfg.antithetic && p >= base_paths;
        const std::size_t stream_idx = mirror ? p - base_paths : p;
        RngStream rng = rng_stream(cfg.seed, stream_idx);
        const double sign = mirror ? -1.0 : 1.0;
        double w = 0.0, wp = 0.0, z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dw = sign * sdt * rng.next_normal();
            const double dwp = sign * sdt * rng.next_normal();
            w += dw;
            wp += dwp;
            z += rho * dw + rho_bar * dwp;
            out.w[p][i + 1] = w;
            out.w_perp[p][i + 1] = wp;
            out.z[p][i + 1] = z;
        }
    });
    return out;
}

SampledPath volterra_path(double hurst, const SampledPath& z) {
    const HolderIndices h(hurst);
    return gfo_stochastic_convolution(KernelSpec::rough(h), z);
}

std::vector<SampledPath> volterra_paths(double hurst, const DriverPaths& drivers) {
    const HolderIndices h(hurst);
    const KernelSpec kern = KernelSpec::rough(h);
    std::vector<SampledPath> out(drivers.z.size());
    parallel_for(drivers.z.size(),
                 [&](std::size_t p) { out[p] = gfo_stochastic_convolution(kern, drivers.z[p]); });
    return out;
}

Eigen::MatrixXd volterra_covariance(double hurst, std::size_t n_steps, double horizon) {
    const HolderIndices h(hurst);
    const double p = h.h_minus();
    const double dt = horizon / static_cast<double>(n_steps);
    const auto N = static_cast<Eigen::Index>(n_steps);
    Eigen::MatrixXd cov(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double ti = dt * static_cast<double>(i + 1);
        cov(i, i) = std::pow(ti, 2.0 * hurst) / (2.0 * hurst);
    }

    // Cov(Z^H_ti, Z^H_tj) = int_0^ti w^p (w + gap)^p dw with gap = tj - ti.
    // Work one superdiagonal at a time (fixed gap) and accumulate the integral
    // cell by cell in ti, so every entry costs a single quadrature cell: the
    // first cell uses a Jacobi rule that absorbs the w^p endpoint singularity,
    // the rest are smooth Gauss-Legendre cells.
    const QuadRule gl = gauss_legendre(8);
    const QuadRule gj = gauss_jacobi(8, 0.0, p);
    const double jac_scale = std::pow(0.5 * dt, p + 1.0);  // maps weight (1+x)^p onto [0, dt]
    parallel_for(static_cast<std::size_t>(N > 0 ? N - 1 : 0), [&](std::size_t k1) {
        const auto k = static_cast<Eigen::Index>(k1) + 1;  // gap in grid steps
        const double gap = dt * static_cast<double>(k);
        double acc = 0.0;
        for (Eigen::Index i = 0; i + k < N; ++i) {
            // add the cell [i dt, (i+1) dt]; acc then holds the integral up
            // to t_{i+1}, which is exactly the entry for (t_{i+1}, t_{i+1+k})
            double cell = 0.0;
            if (i == 0) {
                for (std::size_t q = 0; q < gj.nodes.size(); ++q) {
                    const double w = 0.5 * dt * (gj.nodes[q] + 1.0);
                    cell += gj.weights[q] * std::pow(w + gap, p);
                }
                cell *= jac_scale;
            } else {
                const double a = dt * static_cast<double>(i);
                for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                    const double w = a + 0.5 * dt * (gl.nodes[q] + 1.0);
                    cell += gl.weights[q] * std::pow(w, p) * std::pow(w + gap, p);
                }
                cell *= 0.5 * dt;
            }
            acc += cell;
            cov(i, i + k) = acc;
            cov(i + k, i) = acc;
        }
    });
    return cov;
}

std::vector<SampledPath> volterra_paths_cholesky(const DriverConfig& cfg) {
    cfg.validate();
    if (cfg.n_steps > 8192)
        throw std::invalid_argument(
            "volterra_paths_cholesky: dense factorization restricted to n_steps <= 8192");
    const Eigen::MatrixXd cov = volterra_covariance(cfg.hurst, cfg.n_steps, cfg.horizon);
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("volterra_paths_cholesky: covariance not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();

    const auto N = static_cast<Eigen::Index>(cfg.n_steps);
    std::vector<SampledPath> out(cfg.n_paths, SampledPath(cfg.dt(), cfg.n_steps));
    parallel_for(cfg.n_paths, [&](std::size_t p) {
        RngStream rng = rng_stream(cfg.seed, p);
        Eigen::VectorXd g(N);
        for (Eigen::Index i = 0; i < N; ++i) g(i) = rng.next_normal();
        const Eigen::VectorXd x = L * g;
        for (Eigen::Index i = 0; i < N; ++i) out[p][static_cast<std::size_t>(i) + 1] = x(i);
    });
    return out;
}

}  // namespace rvol
