#include "roughvol/cir.hpp"

#include <cmath>

namespace rvol {

SampledPath simulate_cir_path(const CirParams& p, double dt, std::size_t n_steps, RngStream& rng) {
    p.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_cir_path: dt must be > 0");
    const double sdt = std::sqrt(dt);
    SampledPath y(dt, n_steps);
    // full truncation: the raw Euler state may dip below zero, but drift and
    // diffusion only ever see its positive part
    double raw = p.y0;
    y[0] = p.y0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double pos = std::max(raw, 0.0);
        raw += p.kappa * (p.theta - pos) * dt + p.sigma * std::sqrt(pos) * sdt * rng.next_normal();
        y[i + 1] = std::max(raw, 0.0);
    }
    return y;
}

RiccatiSolution solve_riccati(const CirParams& p, double nu, const HolderIndices& h, double horizon,
                              std::size_t n_steps, RiccatiConvention convention) {
    p.validate();
    if (!(horizon > 0.0)) throw std::invalid_argument("solve_riccati: horizon must be > 0");
    if (n_steps < 1) throw std::invalid_argument("solve_riccati: n_steps must be >= 1");
    if (!(nu >= 0.0)) throw std::invalid_argument("solve_riccati: nu must be >= 0");

    const double T = horizon;
    const double dt = T / static_cast<double>(n_steps);
    const double hp = h.h_plus();
    const double lin = convention == RiccatiConvention::Proof ? p.kappa : p.theta;
    const double half_s2 = 0.5 * p.sigma * p.sigma;

    // C(t) = G(t) - nu (T-t)^(H+1/2)/H+, G(T) = 0; the substitution removes
    // the kernel singularity from the right-hand side, leaving
    //   G'(t) = lin * C(t) + (sigma^2/2) C(t)^2
    // which RK4 integrates backward without touching lag 0.
    const auto c_of = [&](double t, double g) {
        return g - nu * std::pow(T - t, hp) / hp;
    };
    const auto rhs = [&](double t, double g) {
        const double c = c_of(t, g);
        return lin * c + half_s2 * c * c;
    };

    RiccatiSolution sol;
    sol.horizon = T;
    sol.dt = dt;
    sol.c.assign(n_steps + 1, 0.0);
    sol.a.assign(n_steps + 1, 0.0);

    double g = 0.0;
    sol.c[n_steps] = 0.0;
    for (std::size_t i = n_steps; i-- > 0;) {
        const double t1 = dt * static_cast<double>(i + 1);  // integrate t1 -> t0
        const double t0 = dt * static_cast<double>(i);
        const double hstep = -dt;
        const double k1 = rhs(t1, g);
        const double k2 = rhs(t1 + 0.5 * hstep, g + 0.5 * hstep * k1);
        const double k3 = rhs(t1 + 0.5 * hstep, g + 0.5 * hstep * k2);
        const double k4 = rhs(t0, g + hstep * k3);
        g += hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double c = c_of(t0, g);
        if (!std::isfinite(c) || std::abs(c) > 1e12) throw RiccatiDivergence(t0);
        sol.c[i] = c;
    }
    // A(t) = kappa theta int_t^T C du, accumulated backward by trapezoid
    double a = 0.0;
    for (std::size_t i = n_steps; i-- > 0;) {
        a += 0.5 * dt * (sol.c[i] + sol.c[i + 1]);
        sol.a[i] = p.kappa * p.theta * a;
    }
    return sol;
}

}  // namespace rvol
