#pragma once

#include <cstdint>

#include "roughvol/grid.hpp"
#include "roughvol/piecewise.hpp"

namespace rvol {

/// Conditional mean of the stationary-increment rough driver delta ahead of
/// the last history sample:
///   E[Z_{t+delta} | F_t] = (cos(H pi)/pi) delta^(H+1/2)
///       * int_{-inf}^t Z_s / ((t - s + delta) (t - s)^(H+1/2)) ds,
/// evaluated over the supplied history window with exact per-cell moments of
/// the singular weight (t-s)^(-(H+1/2)) against the piecewise-linear
/// interpolant of Z_s / (t - s + delta). Only lags matter, so the history may
/// cover pre-history relabeled to start at grid time 0.
double forecast_driver(const SampledPath& history, double hurst, double delta);

/// Prediction-error variance of the same driver (normalized so that
/// Var[Z_t] = t^(2H)/(2H)): C_H delta^(2H) / (2H) with the constant
/// C_H = Gamma(3/2-H) / (Gamma(H+1/2) Gamma(2-2H)).
double forecast_error_variance(double hurst, double delta);

/// Lognormal forecast of instantaneous variance delta ahead:
///   E_t[v_{t+delta}] = xi(t+delta) exp(nu m + nu^2 V / 2)
/// with m, V from the two functions above. `elapsed` is the calendar time of
/// the forecast origin relative to the xi curve.
double forecast_instantaneous_variance(const SampledPath& history, double hurst, double nu,
                                       const PiecewiseCurve& xi, double elapsed, double delta);

/// Truncated moving-average simulation of the two-sided driver
///   Z_t = sqrt(C_H) int_{-pre}^t ((t-s)^(H-1/2) - (-s)_+^(H-1/2)) dW_s
/// on the grid covering [-pre_horizon, horizon]; the returned path is
/// relabeled to start at 0 and has n_pre + n_steps steps. With this scaling
/// Var[Z_t - Z_0] matches t^(2H)/(2H) for t far from both window ends, and
/// the prediction-error variance matches forecast_error_variance.
SampledPath simulate_two_sided_driver(double hurst, double dt, std::size_t n_pre,
                                      std::size_t n_steps, std::uint64_t seed,
                                      std::uint64_t path_index);

}  // namespace rvol
