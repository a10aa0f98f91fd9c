#include "roughvol/models.hpp"

#include <cmath>

#include "roughvol/parallel.hpp"

namespace rvol {

namespace {

constexpr std::uint64_t kPremiumStreamBit = 1ULL << 63;

/// D(t) = int_0^t (t-s)^(H-1/2) lambda(s) ds for a piecewise-constant curve,
/// by exact per-segment kernel moments.
double deterministic_premium_drift(const PiecewiseCurve& lambda, const HolderIndices& h,
                                   double t) {
    if (t <= 0.0) return 0.0;
    const double hp = h.h_plus();
    double acc = 0.0;
    double a = 0.0;
    const auto& knots = lambda.knots();
    auto add = [&](double b) {
        if (b <= a) return;
        const double val = lambda(0.5 * (a + b));
        acc += val * (std::pow(t - a, hp) - std::pow(t - b, hp)) / hp;
        a = b;
    };
    for (double kn : knots)
        if (kn > 0.0 && kn < t) add(kn);
    add(t);
    return acc;
}

struct PremiumDriftResult {
    SampledPath state;
    SampledPath drift;
};

/// Simulates the premium state from its own stream and accumulates the drift
/// D(t_i) at every grid point. All convolutions are O(n^2) with exact or
/// left-point discretizations matching the closed forms used in tests.
PremiumDriftResult premium_drift(const ModelParams& params, const RiskPremiumSpec& premium,
                                 const std::vector<double>& dz, double dt, RngStream& rng,
                                 double sign) {
    const HolderIndices h = params.holder();
    const double hp = h.h_plus();
    const std::size_t n = dz.size();
    const double sdt = std::sqrt(dt);
    PremiumDriftResult out;
    out.drift = SampledPath(dt, n);

    if (const auto* det = std::get_if<DeterministicPremium>(&premium)) {
        for (std::size_t i = 1; i <= n; ++i)
            out.drift[i] = deterministic_premium_drift(det->lambda, h, dt * static_cast<double>(i));
        return out;
    }

    if (const auto* bl = std::get_if<BrownianLevelPremium>(&premium)) {
        const double c = bl->corr;
        if (!(c >= -1.0 && c <= 1.0))
            throw std::invalid_argument("BrownianLevelPremium: corr must lie in [-1, 1]");
        const double cbar = std::sqrt(std::max(0.0, 1.0 - c * c));
        std::vector<double> dx(n);
        out.state = SampledPath(dt, n);
        double x = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            dx[j] = c * dz[j] + cbar * sign * sdt * rng.next_normal();
            x += dx[j];
            out.state[j + 1] = x;
        }
        // D(t) = (1/H+) int_0^t (t-s)^(H+1/2) dX_s, left point
        for (std::size_t i = 1; i <= n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < i; ++j)
                acc += std::pow(dt * static_cast<double>(i - j), hp) * dx[j];
            out.drift[i] = acc / hp;
        }
        return out;
    }

    if (const auto* dif = std::get_if<DiffusionPremium>(&premium)) {
        if (!(dif->alpha > -0.5 && dif->alpha < 0.0))
            throw std::invalid_argument("DiffusionPremium: alpha must lie in (-1/2, 0)");
        if (!dif->drift_fn || !dif->diffusion_fn)
            throw std::invalid_argument("DiffusionPremium: drift_fn/diffusion_fn must be set");
        const double c = dif->corr;
        if (!(c >= -1.0 && c <= 1.0))
            throw std::invalid_argument("DiffusionPremium: corr must lie in [-1, 1]");
        const double cbar = std::sqrt(std::max(0.0, 1.0 - c * c));
        std::vector<double> dy(n);
        out.state = SampledPath(dt, n);
        double y = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = dt * static_cast<double>(j);
            const double dx = c * dz[j] + cbar * sign * sdt * rng.next_normal();
            dy[j] = dif->drift_fn(t, y) * dt + dif->diffusion_fn(t, y) * dx;
            y += dy[j];
            out.state[j + 1] = y;
        }
        // lambda carries the 1/B(H+1/2, alpha+1) normalization, so composing
        // the two power kernels leaves a unit-coefficient convolution with
        // the single kernel (t-s)^(alpha+H+1/2)
        const double p = dif->alpha + hp;
        for (std::size_t i = 1; i <= n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < i; ++j)
                acc += std::pow(dt * static_cast<double>(i - j), p) * dy[j];
            out.drift[i] = acc;
        }
        return out;
    }

    const auto& cir = std::get<CirPremium>(premium);
    cir.params.validate();
    if (cir.corr != 0.0)
        throw std::invalid_argument("CirPremium: correlated drivers are not supported");
    out.state = SampledPath(dt, n);
    out.state[0] = cir.params.y0;
    double raw = cir.params.y0;
    for (std::size_t j = 0; j < n; ++j) {
        const double pos = std::max(raw, 0.0);
        raw += cir.params.kappa * (cir.params.theta - pos) * dt +
               cir.params.sigma * std::sqrt(pos) * sign * sdt * rng.next_normal();
        out.state[j + 1] = std::max(raw, 0.0);
    }
    // level (not increment) convolution: D_i = sum_{j<i} Y_j m(i-j) with the
    // exact subinterval moment m(l) = ((l dt)^H+ - ((l-1) dt)^H+) / H+
    const double scale = std::pow(dt, hp) / hp;
    std::vector<double> mom(n + 1, 0.0);
    for (std::size_t l = 1; l <= n; ++l)
        mom[l] = scale * (std::pow(static_cast<double>(l), hp) - std::pow(static_cast<double>(l - 1), hp));
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += out.state[j] * mom[i - j];
        out.drift[i] = acc;
    }
    return out;
}

}  // namespace

std::vector<double> discrete_volterra_variance(const HolderIndices& h, double dt,
                                               std::size_t n_steps) {
    const double two_hm = 2.0 * h.h_minus();
    std::vector<double> var(n_steps + 1, 0.0);
    for (std::size_t m = 1; m <= n_steps; ++m)
        var[m] = var[m - 1] + std::pow(dt * static_cast<double>(m), two_hm) * dt;
    return var;
}

PathBundle simulate_path(const ModelParams& params, Measure measure,
                         const RiskPremiumSpec* premium, const DriverConfig& cfg,
                         std::size_t path_index) {
    params.validate();
    cfg.validate();
    if (path_index >= cfg.n_paths)
        throw std::invalid_argument("simulate_path: path_index out of range");

    const std::size_t n = cfg.n_steps;
    const double dt = cfg.dt();
    const double sdt = std::sqrt(dt);
    const double rho = params.rho;
    const double rho_bar = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    const HolderIndices h = params.holder();

    const std::size_t base_paths = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
    const bool mirror = cfg.antithetic && path_index >= base_paths;
    const std::size_t stream_idx = mirror ? path_index - base_paths : path_index;
    const double sign = mirror ? -1.0 : 1.0;

    PathBundle out;
    out.w = SampledPath(dt, n);
    out.w_perp = SampledPath(dt, n);
    out.z = SampledPath(dt, n);

    RngStream rng = rng_stream(cfg.seed, stream_idx);
    std::vector<double> dw(n), dz(n);
    {
        double w = 0.0, wp = 0.0, z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dw[i] = sign * sdt * rng.next_normal();
            const double dwp = sign * sdt * rng.next_normal();
            w += dw[i];
            wp += dwp;
            dz[i] = rho * dw[i] + rho_bar * dwp;
            z += dz[i];
            out.w[i + 1] = w;
            out.w_perp[i + 1] = wp;
            out.z[i + 1] = z;
        }
    }
    out.z_h = gfo_stochastic_convolution(KernelSpec::rough(h), out.z);

    const bool with_premium = measure == Measure::Pricing && premium != nullptr;
    if (with_premium) {
        RngStream prem_rng = rng_stream(cfg.seed, stream_idx | kPremiumStreamBit);
        PremiumDriftResult pd = premium_drift(params, *premium, dz, dt, prem_rng, sign);
        out.premium_state = std::move(pd.state);
        out.premium_drift = std::move(pd.drift);
    }

    std::vector<double> comp;
    if (params.compensator == VolCompensator::Discrete)
        comp = discrete_volterra_variance(h, dt, n);

    const PiecewiseCurve& spot_drift = measure == Measure::Physical ? params.drift : params.rate;
    out.v = SampledPath(dt, n);
    out.s = SampledPath(dt, n);
    double log_s = std::log(params.s0);
    out.s[0] = params.s0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = dt * static_cast<double>(i);
        double expo = params.nu * out.z_h[i];
        if (with_premium) expo += params.nu * out.premium_drift[i];
        if (!comp.empty()) expo -= 0.5 * params.nu * params.nu * comp[i];
        out.v[i] = params.xi0(t) * std::exp(expo);
        if (i < n) {
            log_s += (spot_drift(t) - 0.5 * out.v[i]) * dt + std::sqrt(out.v[i]) * dw[i];
            out.s[i + 1] = std::exp(log_s);
        }
    }
    return out;
}

void for_each_path(const ModelParams& params, Measure measure, const RiskPremiumSpec* premium,
                   const DriverConfig& cfg,
                   const std::function<void(const PathBundle&, std::size_t)>& consume) {
    params.validate();
    cfg.validate();
    parallel_for(cfg.n_paths, [&](std::size_t p) {
        const PathBundle bundle = simulate_path(params, measure, premium, cfg, p);
        consume(bundle, p);
    });
}

SimulatedMarket simulate_p_measure(const ModelParams& params, const DriverConfig& cfg) {
    SimulatedMarket mkt;
    mkt.measure = Measure::Physical;
    mkt.dt = cfg.dt();
    mkt.paths.resize(cfg.n_paths);
    for_each_path(params, Measure::Physical, nullptr, cfg,
                  [&](const PathBundle& b, std::size_t p) { mkt.paths[p] = b; });
    return mkt;
}

SimulatedMarket simulate_q_measure(const ModelParams& params, const RiskPremiumSpec& premium,
                                   const DriverConfig& cfg) {
    SimulatedMarket mkt;
    mkt.measure = Measure::Pricing;
    mkt.dt = cfg.dt();
    mkt.paths.resize(cfg.n_paths);
    for_each_path(params, Measure::Pricing, &premium, cfg,
                  [&](const PathBundle& b, std::size_t p) { mkt.paths[p] = b; });
    return mkt;
}

double conditional_forward_variance(const ModelParams& params, double premium_corr,
                                    const PathBundle& path, std::size_t s_idx, std::size_t t_idx,
                                    CrossTermVariant variant) {
    params.validate();
    const std::size_t n = path.z.n_steps();
    if (s_idx > t_idx || t_idx > n)
        throw std::invalid_argument("conditional_forward_variance: need s_idx <= t_idx <= n");
    if (path.premium_state.n_steps() == 0)
        throw std::invalid_argument(
            "conditional_forward_variance: path carries no premium state (needs a "
            "Brownian-level premium simulation)");

    const HolderIndices h = params.holder();
    const double hm = h.h_minus();
    const double hp = h.h_plus();
    const double dt = path.z.dt;
    const double t = dt * static_cast<double>(t_idx);
    const double tau = dt * static_cast<double>(t_idx - s_idx);

    double a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < s_idx; ++j) {
        const double lag = dt * static_cast<double>(t_idx - j);
        a += std::pow(lag, hm) * (path.z[j + 1] - path.z[j]);
        b += std::pow(lag, hp) * (path.premium_state[j + 1] - path.premium_state[j]);
    }
    b /= hp;

    const double hh = params.hurst;
    const double cross_div = variant == CrossTermVariant::Final ? 1.0 : 2.0;
    double sigma2 = std::pow(tau, 2.0 * hh) / (2.0 * hh) +
                    std::pow(tau, 2.0 * (hh + 1.0)) / (2.0 * hp * hp * (hh + 1.0)) +
                    premium_corr * std::pow(tau, 2.0 * hp) / (hp * hp * cross_div);
    if (tau == 0.0) sigma2 = 0.0;

    double expo = params.nu * (a + b) + 0.5 * params.nu * params.nu * sigma2;
    if (params.compensator == VolCompensator::Discrete)
        expo -= 0.5 * params.nu * params.nu * discrete_volterra_variance(h, dt, t_idx)[t_idx];
    return params.xi0(t) * std::exp(expo);
}

VarSwapPrice price_variance_swap(const ModelParams& params, const RiskPremiumSpec& premium,
                                 const DriverConfig& cfg) {
    std::vector<double> per_path(cfg.n_paths, 0.0);
    for_each_path(params, Measure::Pricing, &premium, cfg,
                  [&](const PathBundle& b, std::size_t p) {
                      double acc = 0.0;
                      for (std::size_t i = 0; i < b.v.n_steps(); ++i)
                          acc += 0.5 * (b.v[i] + b.v[i + 1]) * b.v.dt;
                      per_path[p] = acc / cfg.horizon;
                  });
    double mean = 0.0;
    for (double x : per_path) mean += x;
    mean /= static_cast<double>(cfg.n_paths);
    double var = 0.0;
    for (double x : per_path) var += (x - mean) * (x - mean);
    var /= static_cast<double>(cfg.n_paths > 1 ? cfg.n_paths - 1 : 1);
    VarSwapPrice out;
    out.strike = mean;
    out.std_error = std::sqrt(var / static_cast<double>(cfg.n_paths));
    return out;
}

double variance_swap_strike_deterministic(const ModelParams& params,
                                          const DeterministicPremium& premium, double horizon,
                                          std::size_t n_steps) {
    params.validate();
    if (!(horizon > 0.0)) throw std::invalid_argument("variance_swap_strike: horizon must be > 0");
    if (n_steps < 1) throw std::invalid_argument("variance_swap_strike: n_steps must be >= 1");
    const HolderIndices h = params.holder();
    const double dt = horizon / static_cast<double>(n_steps);
    // E[v_t] = xi0(t) exp(nu D(t)) in the compensated model; trapezoid in t
    double acc = 0.0;
    double prev = params.xi0(0.0);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const double t = dt * static_cast<double>(i);
        const double cur =
            params.xi0(t) * std::exp(params.nu * deterministic_premium_drift(premium.lambda, h, t));
        acc += 0.5 * dt * (prev + cur);
        prev = cur;
    }
    return acc / horizon;
}

double fcir_conditional_expectation(const ModelParams& params, const CirPremium& premium,
                                    const PathBundle& path, std::size_t s_idx, std::size_t t_idx,
                                    RiccatiConvention convention) {
    params.validate();
    premium.params.validate();
    if (premium.corr != 0.0)
        throw std::invalid_argument(
            "fcir_conditional_expectation: requires a premium driver independent of the "
            "variance drivers (corr == 0)");
    const std::size_t n = path.z.n_steps();
    if (s_idx > t_idx || t_idx > n)
        throw std::invalid_argument("fcir_conditional_expectation: need s_idx <= t_idx <= n");
    if (path.premium_state.n_steps() == 0)
        throw std::invalid_argument("fcir_conditional_expectation: path carries no CIR state");

    const HolderIndices h = params.holder();
    const double hm = h.h_minus();
    const double hp = h.h_plus();
    const double dt = path.z.dt;
    const double t = dt * static_cast<double>(t_idx);
    const double tau = dt * static_cast<double>(t_idx - s_idx);

    double a = 0.0, b = 0.0;
    const double scale = std::pow(dt, hp) / hp;
    for (std::size_t j = 0; j < s_idx; ++j) {
        const auto lag_steps = static_cast<double>(t_idx - j);
        a += std::pow(dt * lag_steps, hm) * (path.z[j + 1] - path.z[j]);
        b += path.premium_state[j] * scale *
             (std::pow(lag_steps, hp) - std::pow(lag_steps - 1.0, hp));
    }

    double expo = params.nu * (a + b);
    if (tau > 0.0) {
        expo += 0.5 * params.nu * params.nu * std::pow(tau, 2.0 * params.hurst) /
                (2.0 * params.hurst);
        const RiccatiSolution sol =
            solve_riccati(premium.params, params.nu, h, t, t_idx, convention);
        // the Riccati grid covers [0, t]; its index i corresponds to t_i here
        expo += -path.premium_state[s_idx] * sol.c[s_idx] - sol.a[s_idx];
    } else {
        // s == t: the remaining CIR functional is empty, E_s[v_t] = v_t
        return path.v[t_idx];
    }
    if (params.compensator == VolCompensator::Discrete)
        expo -= 0.5 * params.nu * params.nu * discrete_volterra_variance(h, dt, t_idx)[t_idx];
    return params.xi0(t) * std::exp(expo);
}

}  // namespace rvol
