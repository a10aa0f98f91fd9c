#include <doctest.h>

#include <cmath>
#include <vector>

#include "roughvol/forecast.hpp"
#include "roughvol/inference.hpp"

using namespace rvol;

namespace {

SampledPath sampled(double dt, std::size_t n, double (*f)(double)) {
    SampledPath p(dt, n);
    for (std::size_t i = 0; i <= n; ++i) p[i] = f(i * dt);
    return p;
}

}  // namespace

TEST_CASE("forecast_driver validation") {
    const SampledPath h(0.1, 10);
    CHECK_THROWS_AS(forecast_driver(h, 0.7, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(forecast_driver(h, 0.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(forecast_driver(SampledPath(0.1, 0), 0.2, 0.1), std::invalid_argument);
}

TEST_CASE("forecast of the zero path is zero and the map is linear") {
    const SampledPath zero(0.05, 40);
    CHECK(forecast_driver(zero, 0.2, 0.1) == 0.0);

    const SampledPath a = sampled(0.05, 40, [](double t) { return std::sin(2.0 * t); });
    const SampledPath b = sampled(0.05, 40, [](double t) { return t * t - 0.3 * t; });
    SampledPath combo(0.05, 40);
    for (std::size_t i = 0; i <= 40; ++i) combo[i] = 1.7 * a[i] - 2.4 * b[i];
    const double fa = forecast_driver(a, 0.2, 0.1);
    const double fb = forecast_driver(b, 0.2, 0.1);
    const double fc = forecast_driver(combo, 0.2, 0.1);
    CHECK(fc == doctest::Approx(1.7 * fa - 2.4 * fb).epsilon(1e-13));
}

TEST_CASE("prediction weights sum to one over a long history window") {
    // a constant path must (asymptotically in the window length) predict
    // itself: the weight kernel integrates to 1 over an infinite past
    const double hurst = 0.2, delta = 1.0 / 12.0;
    const std::size_t n = 20000;
    SampledPath flat(0.01, n);  // window of 200 time units
    for (std::size_t i = 0; i <= n; ++i) flat[i] = 5.0;
    const double f = forecast_driver(flat, hurst, delta);
    CHECK(f == doctest::Approx(5.0).epsilon(3e-3));
    CHECK(f < 5.0);  // the truncated window can only under-weight
}

TEST_CASE("grid doubling self-convergence on a smooth history") {
    const double hurst = 0.2, delta = 1.0 / 12.0;
    const double window = 3.0;
    auto fn = [](double t) { return std::sin(1.3 * t) + 0.4 * t; };
    std::vector<double> vals;
    for (std::size_t n : {512, 1024, 2048}) {
        SampledPath h(window / static_cast<double>(n), n);
        for (std::size_t i = 0; i <= n; ++i) h[i] = fn(i * h.dt);
        vals.push_back(forecast_driver(h, hurst, delta));
    }
    CHECK(std::abs(vals[2] - vals[1]) < 1e-4 * std::abs(vals[2]));
    CHECK(std::abs(vals[2] - vals[1]) < std::abs(vals[1] - vals[0]));  // errors shrink
}

TEST_CASE("forecast_error_variance closed form and monotonicity") {
    const double hurst = 0.25, delta = 0.3;
    const double want = np_constant(hurst) * std::pow(delta, 2.0 * hurst) / (2.0 * hurst);
    CHECK(forecast_error_variance(hurst, delta) == doctest::Approx(want).epsilon(1e-14));
    CHECK(forecast_error_variance(hurst, 0.1) < forecast_error_variance(hurst, 0.4));
    CHECK_THROWS_AS(forecast_error_variance(hurst, -0.1), std::invalid_argument);
}

TEST_CASE("forecast_instantaneous_variance is the lognormal composition") {
    const SampledPath h = sampled(0.02, 100, [](double t) { return 0.3 * std::sin(t); });
    const double hurst = 0.3, nu = 1.1, delta = 0.25, elapsed = 2.0;
    const PiecewiseCurve xi({0.0, 2.0, 3.0}, {0.04, 0.09});
    const double m = forecast_driver(h, hurst, delta);
    const double var = forecast_error_variance(hurst, delta);
    const double want = 0.09 * std::exp(nu * m + 0.5 * nu * nu * var);  // t+delta = 2.25
    CHECK(forecast_instantaneous_variance(h, hurst, nu, xi, elapsed, delta) ==
          doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("two-sided driver: reproducibility and stationary increment variance") {
    const double hurst = 0.3, dt = 1.0 / 32.0;
    const std::size_t n_pre = 512, n_steps = 8;
    const SampledPath a = simulate_two_sided_driver(hurst, dt, n_pre, n_steps, 5, 3);
    const SampledPath b = simulate_two_sided_driver(hurst, dt, n_pre, n_steps, 5, 3);
    for (std::size_t i = 0; i <= n_pre + n_steps; ++i) CHECK(a[i] == b[i]);
    CHECK(a[0] == 0.0);

    // Var[Z_{t+Delta} - Z_t] = Delta^(2H)/(2H) deep inside the window
    const std::size_t lag = 4;
    const double delta = dt * static_cast<double>(lag);
    const double want = std::pow(delta, 2.0 * hurst) / (2.0 * hurst);
    const std::size_t n_paths = 4000;
    double acc = 0.0;
    for (std::size_t q = 0; q < n_paths; ++q) {
        const SampledPath z = simulate_two_sided_driver(hurst, dt, n_pre, n_steps, 91, q);
        const double d = z[n_pre + lag] - z[n_pre];
        acc += d * d;
    }
    acc /= static_cast<double>(n_paths);
    const double se = want * std::sqrt(2.0 / static_cast<double>(n_paths));
    CHECK(std::abs(acc - want) < 3.0 * se + 0.03 * want);  // small cell-average bias allowance
}

TEST_CASE("driver forecast beats the trivial zero forecast on stationary paths") {
    const double hurst = 0.25, dt = 1.0 / 32.0, delta = 0.25;
    const std::size_t n_pre = 512, n_steps = 32;
    const std::size_t lead = static_cast<std::size_t>(delta / dt + 0.5);
    const std::size_t n_paths = 400;
    double mse_np = 0.0, mse_zero = 0.0;
    for (std::size_t q = 0; q < n_paths; ++q) {
        const SampledPath z =
            simulate_two_sided_driver(hurst, dt, n_pre, n_steps, 137, q);
        const std::size_t origin = n_pre + n_steps - lead;
        SampledPath hist(dt, origin);
        for (std::size_t i = 0; i <= origin; ++i) hist[i] = z[i];
        const double pred = forecast_driver(hist, hurst, delta);
        const double truth = z[origin + lead];
        // baseline carries no information beyond the last observed level
        mse_np += (truth - pred) * (truth - pred);
        mse_zero += (truth - z[origin]) * (truth - z[origin]);
    }
    CHECK(mse_np < mse_zero);
}
