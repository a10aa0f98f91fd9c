#pragma once

#include <vector>

#include "roughvol/models.hpp"
#include "roughvol/piecewise.hpp"

namespace rvol {

/// Girsanov kernel for passing from the physical to the pricing measure. The
/// component along W is pinned by the drift change, chi_t = (r_t - mu_t) /
/// sqrt(v_t); gamma is the free component along W_perp.
struct GirsanovSpec {
    PiecewiseCurve gamma;
};

/// Discrete Doleans-Dade exponential along one physical-measure path:
///   D_{t_i} = exp( sum_{j<i} (chi_j dW_j + gamma_j dWp_j)
///                  - (1/2) sum_{j<i} (chi_j^2 + gamma_j^2) dt ).
/// Each one-step factor has conditional mean one exactly, so E[D_{t_i}] = 1
/// holds in the discrete scheme, not just in the limit.
SampledPath radon_nikodym_path(const ModelParams& params, const GirsanovSpec& spec,
                               const PathBundle& path);

struct MartingaleReport {
    double mean = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;  // (mean - target) / std_error
    bool pass = false;     // |z| <= 3
    std::size_t n_samples = 0;
};

/// Sample mean vs. target with a 3-standard-error acceptance band.
MartingaleReport martingale_test(const std::vector<double>& samples, double target);

/// Same, but samples i and i + n/2 are first averaged pairwise (for runs with
/// antithetic drivers, where the two halves are mirrored).
MartingaleReport martingale_test_paired(const std::vector<double>& samples, double target);

struct MartingaleSuite {
    MartingaleReport density;          // E[D_T] = 1
    MartingaleReport discounted_spot;  // E[D_T S_T e^{-int_0^T r}] = S_0
    MartingaleReport density_paired;   // antithetic-paired variant of density
};

/// Simulates under the physical measure and checks both martingale claims of
/// the measure change at the terminal horizon.
MartingaleSuite run_martingale_suite(const ModelParams& params, const GirsanovSpec& spec,
                                     const DriverConfig& cfg);

struct StoppedDiagnostics {
    std::vector<double> levels;
    std::vector<double> weighted_frequency;  // E[D_tau 1{tau <= T}]
    std::vector<double> raw_frequency;       // P(tau <= T)
};

/// tau is the first grid time |Z^H| reaches a level; reports how much density
/// mass the stopped paths carry. Useful for localizing the martingale
/// property when the unstopped density has heavy tails.
StoppedDiagnostics stopped_process_diagnostics(const ModelParams& params,
                                               const GirsanovSpec& spec, const DriverConfig& cfg,
                                               const std::vector<double>& levels);

/// Fraction of paths whose implied premium drift
///   int_0^t (t-s)^(H-1/2) lambda_s ds,  lambda = rho chi + sqrt(1-rho^2) gamma,
/// exceeds `bound` in absolute value at some grid time. A nonzero rate flags
/// that the integrability assumption behind the measure change is strained.
double premium_drift_violation_rate(const ModelParams& params, const GirsanovSpec& spec,
                                    const DriverConfig& cfg, double bound);

}  // namespace rvol
