#include "roughvol/premium.hpp"

#include <cmath>
#include <stdexcept>

#include "roughvol/kernels.hpp"

namespace rvol {

namespace {

double normalization(double nu, double rho, NormalizationTag tag) {
    if (!(nu > 0.0)) throw std::invalid_argument("premium: nu must be > 0");
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("premium: rho must lie in [-1, 1]");
    const double rho_bar_sq = 1.0 - rho * rho;
    if (!(rho_bar_sq > 0.0))
        throw std::invalid_argument("premium: |rho| = 1 makes the normalization degenerate");
    return tag == NormalizationTag::Theorem ? 1.0 / (nu * std::sqrt(rho_bar_sq))
                                            : 1.0 / (nu * rho_bar_sq);
}

void check_tenors(const std::vector<double>& tenors) {
    if (tenors.empty()) throw std::invalid_argument("premium: need at least one tenor");
    double prev = 0.0;
    for (double t : tenors) {
        if (!(t > prev)) throw std::invalid_argument("premium: tenors must be positive and strictly increasing");
        prev = t;
    }
}

/// K_ij = int_{T_{j-1}}^{T_j} (T_i - s)^(H-1/2) ds, exact
double kernel_cell(double hp, double t_i, double a, double b) {
    return (std::pow(t_i - a, hp) - std::pow(t_i - b, hp)) / hp;
}

}  // namespace

PiecewiseCurve bootstrap_forward_variance(const std::vector<VarSwapQuote>& quotes) {
    if (quotes.empty()) throw std::invalid_argument("bootstrap_forward_variance: no quotes");
    std::vector<double> knots{0.0};
    std::vector<double> values;
    double prev_t = 0.0, prev_tv = 0.0;
    for (const VarSwapQuote& q : quotes) {
        if (!(q.tenor_years > prev_t))
            throw std::invalid_argument(
                "bootstrap_forward_variance: tenors must be strictly increasing");
        if (!(q.strike_vol > 0.0))
            throw std::invalid_argument("bootstrap_forward_variance: strikes must be positive");
        const double tv = q.strike_vol * q.strike_vol * q.tenor_years;
        const double xi = (tv - prev_tv) / (q.tenor_years - prev_t);
        if (!(xi > 0.0))
            throw std::invalid_argument(
                "bootstrap_forward_variance: nonpositive forward variance (calendar arbitrage) "
                "at tenor " + std::to_string(q.tenor_years));
        knots.push_back(q.tenor_years);
        values.push_back(xi);
        prev_t = q.tenor_years;
        prev_tv = tv;
    }
    return PiecewiseCurve(std::move(knots), std::move(values));
}

ExtractedPremium extract_premium(const PiecewiseCurve& xi_market,
                                 const std::vector<double>& tenors,
                                 const std::vector<double>& physical_forward, double hurst,
                                 double nu, double rho, NormalizationTag tag) {
    check_tenors(tenors);
    if (physical_forward.size() != tenors.size())
        throw std::invalid_argument("extract_premium: physical_forward/tenors length mismatch");
    const HolderIndices h(hurst);
    const double hp = h.h_plus();
    const double c = normalization(nu, rho, tag);
    const std::size_t n = tenors.size();

    ExtractedPremium out;
    out.log_ratio.resize(n);
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi_q = xi_market.left_limit(tenors[i]);
        if (!(xi_q > 0.0) || !(physical_forward[i] > 0.0))
            throw std::invalid_argument("extract_premium: forward variances must be positive");
        out.log_ratio[i] = std::log(xi_q / physical_forward[i]);
        double rhs = c * out.log_ratio[i];
        for (std::size_t j = 0; j < i; ++j) {
            rhs -= lambda[j] * kernel_cell(hp, tenors[i], j == 0 ? 0.0 : tenors[j - 1], tenors[j]);
        }
        const double diag = kernel_cell(hp, tenors[i], i == 0 ? 0.0 : tenors[i - 1], tenors[i]);
        lambda[i] = rhs / diag;
    }
    std::vector<double> knots{0.0};
    knots.insert(knots.end(), tenors.begin(), tenors.end());
    out.lambda = PiecewiseCurve(std::move(knots), std::move(lambda));
    return out;
}

std::vector<double> premium_forward_map(const std::vector<double>& tenors,
                                        const std::vector<double>& lambda, double hurst,
                                        double nu, double rho, NormalizationTag tag) {
    check_tenors(tenors);
    if (lambda.size() != tenors.size())
        throw std::invalid_argument("premium_forward_map: lambda/tenors length mismatch");
    const HolderIndices h(hurst);
    const double hp = h.h_plus();
    const double c = normalization(nu, rho, tag);
    std::vector<double> log_ratio(tenors.size());
    for (std::size_t i = 0; i < tenors.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j)
            acc += lambda[j] * kernel_cell(hp, tenors[i], j == 0 ? 0.0 : tenors[j - 1], tenors[j]);
        log_ratio[i] = acc / c;
    }
    return log_ratio;
}

}  // namespace rvol
