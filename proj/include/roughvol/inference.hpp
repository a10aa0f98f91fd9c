#pragma once

#include <cstddef>
#include <vector>

namespace rvol {

/// Normalizing constant C_H = Gamma(3/2 - H) / (Gamma(H + 1/2) Gamma(2 - 2H))
/// of the stationary-increment representation of the rough driver.
double np_constant(double hurst);

/// Variance scale of increments of the Riemann-Liouville driver far from the
/// origin: Var[Z^H_{t+d} - Z^H_t] -> D_H d^(2H), with D_H = 1 / (2H C_H).
/// Equivalently D_H = 1/(2H) + int_0^inf ((1+x)^(H-1/2) - x^(H-1/2))^2 dx.
double increment_variance_scale(double hurst);

struct RoughnessEstimate {
    double hurst = 0.0;
    double nu = 0.0;             // annualized vol-of-vol
    double intercept_q2 = 0.0;   // log-intercept of the q = 2 scaling fit
    std::vector<double> q_set;
    std::vector<double> zeta;    // fitted scaling exponents zeta_q
    double fit_r2 = 0.0;         // R^2 of zeta_q vs q through the origin
};

/// Multiscale moment regression on a daily spot-volatility series:
/// m(q, d) = mean |log sigma_{t+d} - log sigma_t|^q is fit as
/// log m = c_q + zeta_q log d over lags d = 1..max_lag, H is the slope of
/// zeta_q against q, and nu follows from the level of the q = 2 line via
///   nu = 2 exp(c_2 / 2) P^H / sqrt(D_H),  P = periods_per_year.
RoughnessEstimate estimate_roughness(const std::vector<double>& vol,
                                     const std::vector<double>& q_set = {0.5, 1.0, 1.5, 2.0, 3.0},
                                     std::size_t max_lag = 30, double periods_per_year = 252.0);

struct CorrelationEstimate {
    double rho = 0.0;
    bool clamped = false;  // scaled estimate fell outside [-1, 1]
};

/// Spot/vol correlation from daily data: the sample correlation between
/// variance-normalized price increments and log-variance increments, scaled
/// by (H + 1/2) / sqrt(2H) to undo the kernel-smoothing attenuation.
CorrelationEstimate estimate_correlation(const std::vector<double>& price,
                                         const std::vector<double>& vol, double hurst);

/// Median of window-wise estimates over rolling windows, robust to isolated
/// extreme-volatility episodes that distort the global sample correlation.
CorrelationEstimate estimate_correlation_rolling(const std::vector<double>& price,
                                                 const std::vector<double>& vol, double hurst,
                                                 std::size_t window = 100);

}  // namespace rvol
