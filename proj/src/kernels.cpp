#include "roughvol/kernels.hpp"

#include <cmath>

namespace rvol {

double kernel_eval(const KernelSpec& spec, double lag) {
    const double e = spec.exponent();
    if (lag < 0.0) return 0.0;
    if (lag == 0.0) {
        if (e > 0.0) return 0.0;
        if (e == 0.0) return 1.0;
        return std::numeric_limits<double>::infinity();
    }
    double v = std::pow(lag, e);
    if (spec.kind() == KernelSpec::Kind::Gamma) v *= std::exp(-spec.decay() * lag);
    return v;
}

namespace {

// Lower incomplete gamma, series expansion (good for x < a + 1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma via Lentz continued fraction (good for x >= a + 1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_p: requires a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double kernel_interval_integral(const KernelSpec& spec, double t, double a, double b) {
    if (a > b) throw std::domain_error("kernel_interval_integral: requires a <= b");
    if (b > t) throw std::domain_error("kernel_interval_integral: requires b <= t");
    if (a < 0.0) throw std::domain_error("kernel_interval_integral: requires a >= 0");
    if (a == b) return 0.0;

    const double p = spec.exponent() + 1.0;  // p in (1/2, 3/2), always positive
    const double wa = t - a;                 // upper lag
    const double wb = t - b;                 // lower lag
    if (spec.kind() == KernelSpec::Kind::PowerLaw || spec.decay() == 0.0)
        return (std::pow(wa, p) - std::pow(wb, p)) / p;

    // int_{wb}^{wa} w^(p-1) e^(-beta w) dw = Gamma(p)/beta^p [P(p, beta*wa) - P(p, beta*wb)]
    const double beta = spec.decay();
    const double scale = std::exp(std::lgamma(p) - p * std::log(beta));
    return scale * (gamma_p(p, beta * wa) - gamma_p(p, beta * wb));
}

double beta_fn(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("beta_fn: requires x > 0 and y > 0");
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double kernel_cross_moment(const HolderIndices& h, double alpha, double t, double u) {
    if (!(alpha > -0.5 && alpha < 0.0))
        throw std::domain_error("kernel_cross_moment: requires alpha in (-1/2, 0)");
    if (u > t) throw std::domain_error("kernel_cross_moment: requires u <= t");
    if (u < 0.0) throw std::domain_error("kernel_cross_moment: requires u >= 0");
    if (u == t) return 0.0;
    return beta_fn(alpha + 1.0, h.h_plus()) * std::pow(t - u, alpha + h.h_plus());
}

}  // namespace rvol
