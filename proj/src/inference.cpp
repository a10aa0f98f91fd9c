#include "roughvol/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvol {

namespace {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
};

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    OlsFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double np_constant(double hurst) {
    if (!(hurst > 0.0 && hurst < 0.5))
        throw std::invalid_argument("np_constant: H must lie in (0, 1/2)");
    return std::exp(std::lgamma(1.5 - hurst) - std::lgamma(hurst + 0.5) -
                    std::lgamma(2.0 - 2.0 * hurst));
}

double increment_variance_scale(double hurst) {
    return 1.0 / (2.0 * hurst * np_constant(hurst));
}

RoughnessEstimate estimate_roughness(const std::vector<double>& vol,
                                     const std::vector<double>& q_set, std::size_t max_lag,
                                     double periods_per_year) {
    if (max_lag < 2) throw std::invalid_argument("estimate_roughness: max_lag must be >= 2");
    if (vol.size() < max_lag + 2)
        throw std::invalid_argument("estimate_roughness: series shorter than max_lag + 2");
    if (q_set.size() < 2)
        throw std::invalid_argument("estimate_roughness: need at least two moment orders");
    for (double q : q_set)
        if (!(q > 0.0)) throw std::invalid_argument("estimate_roughness: moment orders must be > 0");
    if (!(periods_per_year > 0.0))
        throw std::invalid_argument("estimate_roughness: periods_per_year must be > 0");

    std::vector<double> log_vol(vol.size());
    for (std::size_t i = 0; i < vol.size(); ++i) {
        if (!(vol[i] > 0.0))
            throw std::invalid_argument("estimate_roughness: volatilities must be positive");
        log_vol[i] = std::log(vol[i]);
    }

    RoughnessEstimate est;
    est.q_set = q_set;
    est.zeta.resize(q_set.size());
    std::vector<double> log_lag(max_lag), log_m(max_lag);
    for (std::size_t d = 1; d <= max_lag; ++d) log_lag[d - 1] = std::log(static_cast<double>(d));

    for (std::size_t k = 0; k < q_set.size(); ++k) {
        const double q = q_set[k];
        for (std::size_t d = 1; d <= max_lag; ++d) {
            double m = 0.0;
            const std::size_t cnt = log_vol.size() - d;
            for (std::size_t t = 0; t < cnt; ++t)
                m += std::pow(std::abs(log_vol[t + d] - log_vol[t]), q);
            if (!(m > 0.0))
                throw std::invalid_argument(
                    "estimate_roughness: degenerate (constant) volatility series");
            log_m[d - 1] = std::log(m / static_cast<double>(cnt));
        }
        const OlsFit f = ols(log_lag, log_m);
        est.zeta[k] = f.slope;
        if (q == 2.0) est.intercept_q2 = f.intercept;
    }

    // H is the through-origin slope of zeta_q against q
    double sqq = 0.0, sqz = 0.0;
    for (std::size_t k = 0; k < q_set.size(); ++k) {
        sqq += q_set[k] * q_set[k];
        sqz += q_set[k] * est.zeta[k];
    }
    est.hurst = sqz / sqq;
    double ss_res = 0.0, ss_tot = 0.0, zbar = 0.0;
    for (double z : est.zeta) zbar += z;
    zbar /= static_cast<double>(est.zeta.size());
    for (std::size_t k = 0; k < q_set.size(); ++k) {
        const double r = est.zeta[k] - est.hurst * q_set[k];
        ss_res += r * r;
        ss_tot += (est.zeta[k] - zbar) * (est.zeta[k] - zbar);
    }
    est.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

    if (std::find(q_set.begin(), q_set.end(), 2.0) == q_set.end())
        throw std::invalid_argument("estimate_roughness: q_set must contain 2 for the nu estimate");
    // m(2, d) -> (nu^2/4) D_H (d / P)^(2H): invert the intercept
    const double d_h = increment_variance_scale(std::clamp(est.hurst, 1e-3, 0.499));
    est.nu = 2.0 * std::exp(0.5 * est.intercept_q2) * std::pow(periods_per_year, est.hurst) /
             std::sqrt(d_h);
    return est;
}

CorrelationEstimate estimate_correlation(const std::vector<double>& price,
                                         const std::vector<double>& vol, double hurst) {
    if (price.size() != vol.size())
        throw std::invalid_argument("estimate_correlation: price/vol length mismatch");
    if (price.size() < 3) throw std::invalid_argument("estimate_correlation: series too short");
    if (!(hurst > 0.0 && hurst < 0.5))
        throw std::invalid_argument("estimate_correlation: H must lie in (0, 1/2)");

    const std::size_t n = price.size() - 1;
    std::vector<double> x(n), y(n);
    for (std::size_t t = 0; t < n; ++t) {
        if (!(price[t] > 0.0 && price[t + 1] > 0.0 && vol[t] > 0.0 && vol[t + 1] > 0.0))
            throw std::invalid_argument("estimate_correlation: inputs must be positive");
        x[t] = (std::log(price[t + 1]) - std::log(price[t])) / vol[t];
        y[t] = 2.0 * (std::log(vol[t + 1]) - std::log(vol[t]));  // log-variance increment
    }
    const double raw = correlation(x, y);
    // the kernel smooths the driving noise: the raw increment correlation is
    // attenuated by sqrt(2H)/(H + 1/2)
    const double scaled = raw * (hurst + 0.5) / std::sqrt(2.0 * hurst);
    CorrelationEstimate est;
    est.clamped = scaled < -1.0 || scaled > 1.0;
    est.rho = std::clamp(scaled, -1.0, 1.0);
    return est;
}

CorrelationEstimate estimate_correlation_rolling(const std::vector<double>& price,
                                                 const std::vector<double>& vol, double hurst,
                                                 std::size_t window) {
    if (window < 10) throw std::invalid_argument("estimate_correlation_rolling: window too small");
    if (price.size() < window + 1)
        return estimate_correlation(price, vol, hurst);
    std::vector<double> estimates;
    bool any_clamped = false;
    for (std::size_t start = 0; start + window < price.size(); ++start) {
        std::vector<double> p(price.begin() + static_cast<std::ptrdiff_t>(start),
                              price.begin() + static_cast<std::ptrdiff_t>(start + window + 1));
        std::vector<double> v(vol.begin() + static_cast<std::ptrdiff_t>(start),
                              vol.begin() + static_cast<std::ptrdiff_t>(start + window + 1));
        const CorrelationEstimate e = estimate_correlation(p, v, hurst);
        estimates.push_back(e.rho);
        any_clamped = any_clamped || e.clamped;
    }
    std::nth_element(estimates.begin(), estimates.begin() + static_cast<std::ptrdiff_t>(estimates.size() / 2),
                     estimates.end());
    CorrelationEstimate est;
    est.rho = estimates[estimates.size() / 2];
    est.clamped = any_clamped;
    return est;
}

}  // namespace rvol
