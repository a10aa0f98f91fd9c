#include "roughvol/forecast.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "roughvol/drivers.hpp"
#include "roughvol/inference.hpp"

namespace rvol {

double forecast_driver(const SampledPath& history, double hurst, double delta) {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw std::invalid_argument("forecast_driver: H must lie in (0, 1/2)");
    if (!(delta > 0.0)) throw std::invalid_argument("forecast_driver: delta must be > 0");
    const std::size_t n = history.n_steps();
    if (n < 1) throw std::invalid_argument("forecast_driver: empty history");

    const double hp = hurst + 0.5;
    const double dt = history.dt;
    // per-cell exact moments of the singular weight u^(-(H+1/2)), u = t - s,
    // against the piecewise-linear interpolant of phi(u) = Z_{t-u} / (u + delta)
    const double q0 = 1.0 - hp;  // in (0, 1/2): moments stay finite at u = 0
    const double q1 = 2.0 - hp;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double u1 = dt * static_cast<double>(n - j - 1);
        const double u2 = dt * static_cast<double>(n - j);
        const double phi_hi = history[j] / (u2 + delta);      // phi at u = u2
        const double phi_lo = history[j + 1] / (u1 + delta);  // phi at u = u1
        const double b = (phi_hi - phi_lo) / (u2 - u1);
        const double a = phi_lo - b * u1;
        const double m0 = (std::pow(u2, q0) - std::pow(u1, q0)) / q0;
        const double m1 = (std::pow(u2, q1) - std::pow(u1, q1)) / q1;
        acc += a * m0 + b * m1;
    }
    return std::cos(hurst * M_PI) / M_PI * std::pow(delta, hp) * acc;
}

double forecast_error_variance(double hurst, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("forecast_error_variance: delta must be > 0");
    return np_constant(hurst) * std::pow(delta, 2.0 * hurst) / (2.0 * hurst);
}

double forecast_instantaneous_variance(const SampledPath& history, double hurst, double nu,
                                       const PiecewiseCurve& xi, double elapsed, double delta) {
    if (!(nu >= 0.0))
        throw std::invalid_argument("forecast_instantaneous_variance: nu must be >= 0");
    const double m = forecast_driver(history, hurst, delta);
    const double var = forecast_error_variance(hurst, delta);
    return xi(elapsed + delta) * std::exp(nu * m + 0.5 * nu * nu * var);
}

SampledPath simulate_two_sided_driver(double hurst, double dt, std::size_t n_pre,
                                      std::size_t n_steps, std::uint64_t seed,
                                      std::uint64_t path_index) {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw std::invalid_argument("simulate_two_sided_driver: H must lie in (0, 1/2)");
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_two_sided_driver: dt must be > 0");
    const std::size_t n = n_pre + n_steps;
    if (n < 1) throw std::invalid_argument("simulate_two_sided_driver: empty grid");

    const double hp = hurst + 0.5;
    const double scale = std::sqrt(np_constant(hurst));
    const double sdt = std::sqrt(dt);
    const double pre = dt * static_cast<double>(n_pre);

    RngStream rng = rng_stream(seed, path_index);
    std::vector<double> dw(n);
    for (std::size_t j = 0; j < n; ++j) dw[j] = sdt * rng.next_normal();

    // cell-averaged kernel weights: the (t-s) part depends only on the lag,
    // the (-s)_+ part only on the cell, so the latter folds into a prefix sum
    std::vector<double> lag_w(n + 1, 0.0);
    const double pw = std::pow(dt, hp) / hp;
    for (std::size_t l = 1; l <= n; ++l)
        lag_w[l] = pw * (std::pow(static_cast<double>(l), hp) - std::pow(static_cast<double>(l - 1), hp)) / dt;

    std::vector<double> origin_w(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double s_lo = dt * static_cast<double>(j) - pre;
        const double s_hi = s_lo + dt;
        if (s_hi <= 0.0)
            origin_w[j] = (std::pow(-s_lo, hp) - std::pow(-s_hi, hp)) / (hp * dt);
        else if (s_lo < 0.0)
            origin_w[j] = std::pow(-s_lo, hp) / (hp * dt);
    }

    SampledPath z(dt, n);
    double origin_acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += lag_w[i - j] * dw[j];
        origin_acc += origin_w[i - 1] * dw[i - 1];
        z[i] = scale * (acc - origin_acc);
    }
    return z;
}

}  // namespace rvol
