#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace rvol {

/// Hurst index H in (0, 1/2) together with the shifted exponents
/// H- = H - 1/2 and H+ = H + 1/2 that appear throughout the kernel algebra.
class HolderIndices {
public:
    explicit HolderIndices(double h) : h_(h) {
        if (!(h > 0.0 && h < 0.5))
            throw std::invalid_argument("HolderIndices: H must lie in (0, 1/2), got " + std::to_string(h));
    }
    double h() const { return h_; }
    double h_minus() const { return h_ - 0.5; }
    double h_plus() const { return h_ + 0.5; }

private:
    double h_;
};

/// Parametric Volterra kernel of convolution type k(t,s) = k(t-s).
/// PowerLaw: k(u) = u^alpha on u > 0, alpha in (-1/2, 1/2).
/// Gamma:    k(u) = u^(H-1/2) exp(-beta u) on u > 0, H in (0,1), beta >= 0.
class KernelSpec {
public:
    enum class Kind { PowerLaw, Gamma };

    static KernelSpec power_law(double alpha) {
        if (!(alpha > -0.5 && alpha < 0.5))
            throw std::invalid_argument("KernelSpec: power-law exponent must lie in (-1/2, 1/2)");
        KernelSpec s;
        s.kind_ = Kind::PowerLaw;
        s.exponent_ = alpha;
        return s;
    }
    static KernelSpec gamma(double hurst, double beta) {
        if (!(hurst > 0.0 && hurst < 1.0))
            throw std::invalid_argument("KernelSpec: Gamma kernel requires H in (0,1)");
        if (!(beta >= 0.0))
            throw std::invalid_argument("KernelSpec: Gamma kernel requires beta >= 0");
        KernelSpec s;
        s.kind_ = Kind::Gamma;
        s.exponent_ = hurst - 0.5;
        s.beta_ = beta;
        return s;
    }
    static KernelSpec rough(const HolderIndices& h) { return power_law(h.h_minus()); }

    Kind kind() const { return kind_; }
    double exponent() const { return exponent_; }
    double decay() const { return beta_; }

private:
    KernelSpec() = default;
    Kind kind_ = Kind::PowerLaw;
    double exponent_ = 0.0;
    double beta_ = 0.0;
};

/// k(lag). Returns 0 for lag < 0 (and for lag == 0 when the exponent is
/// positive). With a negative exponent the kernel is unbounded at 0+, and
/// evaluation at exactly 0 returns +inf; integration routines must use the
/// closed-form moments instead of touching the singularity.
double kernel_eval(const KernelSpec& spec, double lag);

/// Integral of k(t - u) over u in [a, b] with 0 <= a <= b <= t.
/// PowerLaw is exact: ((t-a)^(e+1) - (t-b)^(e+1)) / (e+1).
/// Gamma reduces to incomplete-gamma differences, exact to ~1e-14.
double kernel_interval_integral(const KernelSpec& spec, double t, double a, double b);

/// Euler Beta function B(x,y) = Gamma(x)Gamma(y)/Gamma(x+y), x,y > 0.
double beta_fn(double x, double y);

/// Closed form of the iterated-kernel moment
///   int_u^t k_{H-}(t-s) k_alpha(s-u) ds = B(alpha+1, H+) (t-u)^(alpha+H+),
/// for alpha in (-1/2, 0) and 0 <= u <= t.
double kernel_cross_moment(const HolderIndices& h, double alpha, double t, double u);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

}  // namespace rvol
