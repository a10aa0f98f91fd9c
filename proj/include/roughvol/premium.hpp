#pragma once

#include <vector>

#include "roughvol/piecewise.hpp"

namespace rvol {

struct VarSwapQuote {
    double tenor_years;  // maturity T in years
    double strike_vol;   // quoted fair strike in volatility units
};

/// Forward variance curve bootstrapped from co-dated variance-swap quotes:
/// with V_i = strike_vol_i^2, the piecewise-constant forward variance on
/// (T_{i-1}, T_i] is xi_i = (V_i T_i - V_{i-1} T_{i-1}) / (T_i - T_{i-1}).
/// Tenors must be strictly increasing; a nonpositive forward variance is a
/// calendar arbitrage in the quotes and raises.
PiecewiseCurve bootstrap_forward_variance(const std::vector<VarSwapQuote>& quotes);

/// Which constant ties the premium to the observable spread between the
/// pricing and physical forward-variance curves:
/// Theorem uses c = 1/(nu sqrt(1-rho^2)), Estimation c = 1/(nu (1-rho^2)).
/// The two extracted curves differ by the exact factor 1/sqrt(1-rho^2).
enum class NormalizationTag { Theorem, Estimation };

struct ExtractedPremium {
    PiecewiseCurve lambda;          // piecewise-constant on the quote tenors
    std::vector<double> log_ratio;  // log(xi_q(T_i) / xi_p(T_i)) inputs
};

/// Solves the lower-triangular system
///   sum_{j<=i} lambda_j K_ij = c log(xi_q(T_i) / xi_p(T_i)),
///   K_ij = ((T_i - T_{j-1})^(H+1/2) - (T_i - T_j)^(H+1/2)) / (H + 1/2),
/// where xi_q is the market (pricing-measure) forward-variance curve
/// evaluated by left limits at the tenors and xi_p(T_i) the physical-model
/// expectation of v_{T_i}.
ExtractedPremium extract_premium(const PiecewiseCurve& xi_market,
                                 const std::vector<double>& tenors,
                                 const std::vector<double>& physical_forward, double hurst,
                                 double nu, double rho,
                                 NormalizationTag tag = NormalizationTag::Theorem);

/// Forward map of the same system: the log-ratios log(xi_q/xi_p) at the
/// tenors implied by a piecewise-constant premium (round-trip inverse of
/// extract_premium).
std::vector<double> premium_forward_map(const std::vector<double>& tenors,
                                        const std::vector<double>& lambda, double hurst,
                                        double nu, double rho,
                                        NormalizationTag tag = NormalizationTag::Theorem);

}  // namespace rvol
