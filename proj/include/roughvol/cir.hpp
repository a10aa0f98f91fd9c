#pragma once

#include <cstdint>
#include <vector>

#include "roughvol/grid.hpp"
#include "roughvol/kernels.hpp"
#include "roughvol/rng.hpp"

namespace rvol {

struct CirParams {
    double kappa;  // mean-reversion speed, 1/time
    double theta;  // long-run level
    double sigma;  // volatility of the factor
    double y0;     // initial level

    void validate() const {
        if (!(kappa > 0.0 && theta > 0.0 && sigma >= 0.0))
            throw std::invalid_argument(
                "CirParams: kappa, theta must be positive and sigma nonnegative");
        if (!(y0 >= 0.0)) throw std::invalid_argument("CirParams: y0 must be nonnegative");
    }
};

/// One CIR path by full-truncation Euler: negative excursions are truncated
/// inside both drift and diffusion, so the path stays nonnegative.
SampledPath simulate_cir_path(const CirParams& p, double dt, std::size_t n_steps, RngStream& rng);

/// Sign convention of the linear term in the backward Riccati equation for
/// E[exp(nu int_t^T (T-u)^(H-1/2) Y_u du) | Y_t = y] = exp(-y C(t) - A(t)).
/// Proof is the Feynman-Kac-consistent form dC/dt = nu k(T-t) + kappa C +
/// (sigma^2/2) C^2; Statement replaces kappa by theta in the linear term.
enum class RiccatiConvention { Proof, Statement };

struct RiccatiSolution {
    double horizon = 0.0;  // terminal time T
    double dt = 0.0;
    std::vector<double> c;  // C(t_i, T)
    std::vector<double> a;  // A(t_i, T) = kappa theta int_t^T C(u,T) du
};

struct RiccatiDivergence : std::runtime_error {
    double blow_up_time;
    explicit RiccatiDivergence(double t)
        : std::runtime_error("solve_riccati: solution blew up at t = " + std::to_string(t)),
          blow_up_time(t) {}
};

/// Backward Runge-Kutta integration from C(T,T) = 0. The singular source
/// nu (T-t)^(H-1/2) is absorbed exactly into the substitution
/// G(t) = C(t) + nu (T-t)^(H+1/2)/H+, so no stage ever evaluates the kernel
/// at lag 0. Throws RiccatiDivergence if |C| exceeds 1e12.
RiccatiSolution solve_riccati(const CirParams& p, double nu, const HolderIndices& h, double horizon,
                              std::size_t n_steps,
                              RiccatiConvention convention = RiccatiConvention::Proof);

}  // namespace rvol
