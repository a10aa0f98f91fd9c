#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "roughvol/cir.hpp"
#include "roughvol/drivers.hpp"
#include "roughvol/gfo.hpp"
#include "roughvol/grid.hpp"
#include "roughvol/kernels.hpp"
#include "roughvol/piecewise.hpp"

namespace rvol {

enum class Measure { Physical, Pricing };

/// Whether the exponent of the variance process carries the discrete
/// Ito-isometry compensator -(nu^2/2) Var[Z^H_t]. With the compensator the
/// simulated grid variance satisfies E[v_t] = xi0(t) exactly; without it the
/// raw exponential of the rough driver is used and E[v_t] = xi0(t) *
/// exp((nu^2/2) t^(2H) / (2H)) up to discretization.
enum class VolCompensator { None, Discrete };

struct ModelParams {
    double hurst = 0.1;
    double nu = 1.0;          // vol-of-vol, >= 0
    double rho = 0.0;         // spot/vol correlation, in [-1, 0]
    PiecewiseCurve xi0 = PiecewiseCurve::constant(0.04);    // forward variance curve
    PiecewiseCurve rate = PiecewiseCurve::constant(0.0);    // risk-free short rate r
    PiecewiseCurve drift = PiecewiseCurve::constant(0.0);   // physical equity drift mu
    double s0 = 1.0;
    VolCompensator compensator = VolCompensator::None;

    void validate() const {
        HolderIndices check(hurst);
        (void)check;
        if (!(nu >= 0.0)) throw std::invalid_argument("ModelParams: nu must be >= 0");
        if (!(rho >= -1.0 && rho <= 0.0))
            throw std::invalid_argument("ModelParams: rho must lie in [-1, 0]");
        for (double v : xi0.values())
            if (!(v > 0.0)) throw std::invalid_argument("ModelParams: xi0 must be positive");
        if (!(s0 > 0.0)) throw std::invalid_argument("ModelParams: s0 must be positive");
    }
    HolderIndices holder() const { return HolderIndices(hurst); }
};

// ---------------------------------------------------------------------------
// Volatility risk premium specifications for the pricing measure. The premium
// enters the variance exponent through the drift
//   D(t) = int_0^t (t-s)^(H-1/2) lambda_s ds,
// evaluated with the discretization appropriate to each lambda dynamic.
// ---------------------------------------------------------------------------

/// lambda is a known deterministic curve; D is computed by exact kernel
/// moments against its piecewise-constant interpolant.
struct DeterministicPremium {
    PiecewiseCurve lambda;
};

/// lambda_t = (G^alpha Y)(t) / B(H+1/2, alpha+1) for a state diffusion
///   dY_t = b(t, Y_t) dt + a(t, Y_t) dX_t,  Y_0 = 0,
/// with d<X, Z>_t = corr dt. The Beta normalization makes the iterated-kernel
/// composition collapse to the unit-coefficient drift
/// D(t) = sum_j (t - t_j)^(alpha+H+1/2) dY_j.
struct DiffusionPremium {
    double alpha;  // in (-1/2, 0)
    std::function<double(double, double)> drift_fn;      // b(t, y)
    std::function<double(double, double)> diffusion_fn;  // a(t, y)
    double corr = 0.0;
};

/// lambda_t = X_t for a pricing-measure Brownian motion X with
/// d<X, Z>_t = corr dt. Here D(t) = (1/H+) int_0^t (t-s)^(H+1/2) dX_s, and
/// the conditional forward variance has a Gaussian closed form.
struct BrownianLevelPremium {
    double corr = 0.0;
};

/// lambda_t = Y_t for a CIR factor independent of the variance drivers;
/// admits the Riccati closed form for conditional forward variance.
struct CirPremium {
    CirParams params;
    double corr = 0.0;  // must stay 0 for the closed form
};

using RiskPremiumSpec =
    std::variant<DeterministicPremium, DiffusionPremium, BrownianLevelPremium, CirPremium>;

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

/// Everything sampled along one Monte Carlo path. premium_state/premium_drift
/// are empty (n_steps == 0) when the path carries no stochastic premium.
struct PathBundle {
    SampledPath w, w_perp, z;  // Brownian drivers
    SampledPath z_h;           // rough Volterra driver G- Z
    SampledPath v;             // instantaneous variance
    SampledPath s;             // spot
    SampledPath premium_state;  // Y (diffusion/CIR) or X (Brownian level)
    SampledPath premium_drift;  // D(t)
};

/// Simulates one path. Under Measure::Physical the premium is ignored, the
/// spot drifts at mu and v = xi0 * exp(nu Z^H - comp). Under Measure::Pricing
/// the spot drifts at r and the variance exponent additionally carries nu D.
/// Driver randomness depends only on (seed, path_index); stochastic premium
/// drivers use a disjoint stream so results with and without a premium share
/// the same (W, W_perp).
PathBundle simulate_path(const ModelParams& params, Measure measure,
                         const RiskPremiumSpec* premium, const DriverConfig& cfg,
                         std::size_t path_index);

struct SimulatedMarket {
    Measure measure = Measure::Physical;
    double dt = 0.0;
    std::vector<PathBundle> paths;
};

SimulatedMarket simulate_p_measure(const ModelParams& params, const DriverConfig& cfg);
SimulatedMarket simulate_q_measure(const ModelParams& params, const RiskPremiumSpec& premium,
                                   const DriverConfig& cfg);

/// Streaming variant: runs every path (in parallel) and hands each bundle to
/// `consume(bundle, path_index)` without retaining it, for large-N estimates.
/// The consumer must be safe for concurrent calls on distinct indices.
void for_each_path(const ModelParams& params, Measure measure, const RiskPremiumSpec* premium,
                   const DriverConfig& cfg,
                   const std::function<void(const PathBundle&, std::size_t)>& consume);

/// Discrete variance of the Volterra driver at each grid point,
/// Var[Z^H_{t_i}] = sum_{m=1..i} k(m dt)^2 dt (the Ito-isometry compensator).
std::vector<double> discrete_volterra_variance(const HolderIndices& h, double dt,
                                               std::size_t n_steps);

// ---------------------------------------------------------------------------
// Conditional forward variance under a Brownian-level premium
// ---------------------------------------------------------------------------

/// Which constant multiplies the correlation cross term
/// corr * (t-s)^(2H+1) in the total-variance part of E_s[v_t]:
/// Final uses 1/H+^2 (consistent with 2 Cov of the two truncated integrals),
/// ProofIntermediate uses 1/(2 H+^2).
enum class CrossTermVariant { Final, ProofIntermediate };

/// Closed form of E_s[v_t] along a path simulated under Measure::Pricing with
/// a BrownianLevelPremium of correlation `premium_corr`:
///   xi0(t) exp(nu A + nu B) exp((nu^2/2) Sigma^2(s,t)) * exp(-comp(t))
/// where A, B are the F_s-measurable truncations of the rough driver and the
/// premium drift, and Sigma^2 collects the residual Gaussian variance.
double conditional_forward_variance(const ModelParams& params, double premium_corr,
                                    const PathBundle& path, std::size_t s_idx, std::size_t t_idx,
                                    CrossTermVariant variant = CrossTermVariant::Final);

// ---------------------------------------------------------------------------
// Variance swaps
// ---------------------------------------------------------------------------

struct VarSwapPrice {
    double strike = 0.0;     // fair strike (1/T) E int_0^T v dt
    double std_error = 0.0;  // Monte Carlo SE of the strike
};

/// Monte Carlo fair variance-swap strike under the pricing measure,
/// (1/T) E^Q[int_0^T v_t dt], trapezoid in time, mean over paths.
VarSwapPrice price_variance_swap(const ModelParams& params, const RiskPremiumSpec& premium,
                                 const DriverConfig& cfg);

/// Model-implied fair strike without simulation, valid for deterministic
/// lambda: (1/T) int_0^T xi0(t) exp(nu D(t)) dt (compensated xi0-form).
double variance_swap_strike_deterministic(const ModelParams& params,
                                          const DeterministicPremium& premium, double horizon,
                                          std::size_t n_steps);

// ---------------------------------------------------------------------------
// CIR premium closed form
// ---------------------------------------------------------------------------

/// E_s[v_t] along a pricing-measure path with a CirPremium: the truncated
/// Gaussian and drift terms as above, times the CIR moment-generating factor
/// exp(-Y_s C(s,t) - A(s,t)) from the Riccati solution with terminal time t.
/// Requires an independent premium driver (corr == 0).
double fcir_conditional_expectation(const ModelParams& params, const CirPremium& premium,
                                    const PathBundle& path, std::size_t s_idx, std::size_t t_idx,
                                    RiccatiConvention convention = RiccatiConvention::Proof);

}  // namespace rvol
