#pragma once

#include "roughvol/grid.hpp"
#include "roughvol/kernels.hpp"

namespace rvol {

/// Branch of the generalized fractional operator G^alpha for the kernel
/// x^alpha applied to beta-Hoelder inputs: the derivative sits outside the
/// convolution for alpha in (-beta, 0) and inside for alpha in [0, 1-beta).
enum class GfoBranch { DerivativeOutside, DerivativeInside };

struct GfoKind {
    double alpha;
    GfoBranch branch;
    double holder_beta = 1.0;  // declared regularity of the input path

    GfoKind(double a, GfoBranch b, double beta = 1.0) : alpha(a), branch(b), holder_beta(beta) {
        if (!(beta > 0.0 && beta <= 1.0))
            throw std::invalid_argument("GfoKind: Hoelder exponent must lie in (0, 1]");
        if (b == GfoBranch::DerivativeOutside && !(a > -beta && a < 0.0))
            throw std::domain_error("GfoKind: DerivativeOutside requires alpha in (-beta, 0)");
        if (b == GfoBranch::DerivativeInside && !(a >= 0.0 && a < 1.0 - beta))
            throw std::domain_error("GfoKind: DerivativeInside requires alpha in [0, 1-beta)");
    }
};

enum class PathInterp { Linear, Constant };

/// (G^alpha f)(t_i) for a piecewise-linear interpolant of f. Both branches
/// reduce to int_0^t f'(s) (t-s)^alpha ds once f(0) is subtracted, which is
/// evaluated with exact per-subinterval kernel moments (no quadrature node
/// ever touches the singularity).
SampledPath gfo_apply_deterministic(const GfoKind& kind, const SampledPath& f);

/// (G+ lambda)(t) = int_0^t (t-s)^(H-1/2) lambda_s ds via exact moments.
/// Inputs with lambda(0) != 0 are rejected unless allow_nonzero_start is set
/// (piecewise-constant premia in the extraction workflow legitimately start
/// away from zero).
SampledPath gfo_half_plus(const SampledPath& lambda, const HolderIndices& h,
                          PathInterp interp = PathInterp::Linear,
                          bool allow_nonzero_start = false);

/// Left-point Ito convolution (G- Z)(t_i) = sum_{j<i} k(t_i - t_j) dZ_j,
/// from the increments of `brownian`; the nearest kernel lag is dt.
SampledPath gfo_stochastic_convolution(const KernelSpec& kernel, const SampledPath& brownian);

}  // namespace rvol
