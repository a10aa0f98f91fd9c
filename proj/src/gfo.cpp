#include "roughvol/gfo.hpp"

#include <cmath>

namespace rvol {

SampledPath gfo_apply_deterministic(const GfoKind& kind, const SampledPath& f) {
    const std::size_t n = f.n_steps();
    if (n == 0) throw std::invalid_argument("gfo_apply_deterministic: empty path");
    if (!std::isfinite(f[0]))
        throw std::invalid_argument("gfo_apply_deterministic: f(0) must be finite");

    const double a = kind.alpha;
    const double p = a + 1.0;
    const double dt = f.dt;

    // Integration by parts with g = f - f(0), g(0) = 0:
    //   (G^a f)(t) = int_0^t g'(s) (t-s)^a ds,
    // exact when f is the piecewise-linear interpolant. The per-lag moment
    // int_{t_j}^{t_{j+1}} (t_i - s)^a ds depends only on m = i - j.
    std::vector<double> moment(n + 1, 0.0);
    const double scale = std::pow(dt, p) / p;
    for (std::size_t m = 1; m <= n; ++m)
        moment[m] = scale * (std::pow(static_cast<double>(m), p) -
                             std::pow(static_cast<double>(m - 1), p));

    std::vector<double> slope(n);
    for (std::size_t j = 0; j < n; ++j) slope[j] = (f[j + 1] - f[j]) / dt;

    SampledPath out(dt, n);
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += slope[j] * moment[i - j];
        out[i] = acc;
    }
    return out;
}

SampledPath gfo_half_plus(const SampledPath& lambda, const HolderIndices& h,
                          PathInterp interp, bool allow_nonzero_start) {
    const std::size_t n = lambda.n_steps();
    if (n == 0) throw std::invalid_argument("gfo_half_plus: empty path");
    if (!allow_nonzero_start && lambda[0] != 0.0)
        throw std::invalid_argument(
            "gfo_half_plus: lambda(0) != 0; pass allow_nonzero_start to override");

    const double dt = lambda.dt;
    const double hp = h.h_plus();

    // First two moments of (t_i - s)^(H-1/2) over [t_j, t_{j+1}], lag m = i - j:
    //   M1(m) = int (t_i - s)^(H-) ds,  M2(m) = int (s - t_j)(t_i - s)^(H-) ds.
    std::vector<double> m1(n + 1, 0.0), m2(n + 1, 0.0);
    const double s1 = std::pow(dt, hp) / hp;
    const double s2 = std::pow(dt, hp + 1.0) / (hp + 1.0);
    for (std::size_t m = 1; m <= n; ++m) {
        const double em = static_cast<double>(m);
        const double a1 = s1 * (std::pow(em, hp) - std::pow(em - 1.0, hp));
        m1[m] = a1;
        // int (s - t_j) w^(H-) ds with w = t_i - s, e1 = m dt, e2 = (m-1) dt:
        //   = e1 * M1 - int w^(H+)... expressed via the (H+ + 1) moment.
        const double b = s2 * (std::pow(em, hp + 1.0) - std::pow(em - 1.0, hp + 1.0));
        m2[m] = em * dt * a1 - b;
    }

    SampledPath out(dt, n);
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            if (interp == PathInterp::Constant) {
                acc += lambda[j] * m1[i - j];
            } else {
                const double c = (lambda[j + 1] - lambda[j]) / dt;
                acc += lambda[j] * m1[i - j] + c * m2[i - j];
            }
        }
        out[i] = acc;
    }
    return out;
}

SampledPath gfo_stochastic_convolution(const KernelSpec& kernel, const SampledPath& brownian) {
    const std::size_t n = brownian.n_steps();
    if (n == 0) throw std::invalid_argument("gfo_stochastic_convolution: empty path");
    const double dt = brownian.dt;

    std::vector<double> kern(n + 1, 0.0);
    for (std::size_t m = 1; m <= n; ++m) kern[m] = kernel_eval(kernel, static_cast<double>(m) * dt);

    SampledPath out(dt, n);
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j)
            acc += kern[i - j] * (brownian[j + 1] - brownian[j]);
        out[i] = acc;
    }
    return out;
}

}  // namespace rvol
