#include "roughvol/measure.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>

namespace rvol {

SampledPath radon_nikodym_path(const ModelParams& params, const GirsanovSpec& spec,
                               const PathBundle& path) {
    const std::size_t n = path.w.n_steps();
    const double dt = path.w.dt;
    SampledPath d(dt, n, 0.0);
    d[0] = 1.0;
    double log_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = dt * static_cast<double>(j);
        const double chi = (params.rate(t) - params.drift(t)) / std::sqrt(path.v[j]);
        const double gam = spec.gamma(t);
        const double dw = path.w[j + 1] - path.w[j];
        const double dwp = path.w_perp[j + 1] - path.w_perp[j];
        log_d += chi * dw + gam * dwp - 0.5 * (chi * chi + gam * gam) * dt;
        d[j + 1] = std::exp(log_d);
    }
    return d;
}

MartingaleReport martingale_test(const std::vector<double>& samples, double target) {
    if (samples.size() < 2) throw std::invalid_argument("martingale_test: need >= 2 samples");
    MartingaleReport r;
    r.n_samples = samples.size();
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double x : samples) var += (x - mean) * (x - mean);
    var /= static_cast<double>(samples.size() - 1);
    r.mean = mean;
    r.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    r.z_score = r.std_error > 0.0 ? (mean - target) / r.std_error
                                  : (mean == target ? 0.0 : std::numeric_limits<double>::infinity());
    r.pass = std::abs(r.z_score) <= 3.0;
    return r;
}

MartingaleReport martingale_test_paired(const std::vector<double>& samples, double target) {
    if (samples.size() % 2 != 0)
        throw std::invalid_argument("martingale_test_paired: need an even sample count");
    const std::size_t half = samples.size() / 2;
    std::vector<double> avg(half);
    for (std::size_t i = 0; i < half; ++i) avg[i] = 0.5 * (samples[i] + samples[i + half]);
    return martingale_test(avg, target);
}

MartingaleSuite run_martingale_suite(const ModelParams& params, const GirsanovSpec& spec,
                                     const DriverConfig& cfg) {
    std::vector<double> density(cfg.n_paths), discounted(cfg.n_paths);
    const double horizon = cfg.horizon;
    const double discount = std::exp(-params.rate.integral(0.0, horizon));
    for_each_path(params, Measure::Physical, nullptr, cfg,
                  [&](const PathBundle& b, std::size_t p) {
                      const SampledPath d = radon_nikodym_path(params, spec, b);
                      density[p] = d[d.n_steps()];
                      discounted[p] = density[p] * b.s[b.s.n_steps()] * discount;
                  });
    MartingaleSuite suite;
    suite.density = martingale_test(density, 1.0);
    suite.discounted_spot = martingale_test(discounted, params.s0);
    suite.density_paired = cfg.antithetic ? martingale_test_paired(density, 1.0) : suite.density;
    return suite;
}

StoppedDiagnostics stopped_process_diagnostics(const ModelParams& params,
                                               const GirsanovSpec& spec, const DriverConfig& cfg,
                                               const std::vector<double>& levels) {
    for (double l : levels)
        if (!(l > 0.0))
            throw std::invalid_argument("stopped_process_diagnostics: levels must be positive");
    const std::size_t m = levels.size();
    std::vector<double> weighted(m, 0.0);
    std::vector<double> raw(m, 0.0);
    std::mutex mu;
    for_each_path(params, Measure::Physical, nullptr, cfg,
                  [&](const PathBundle& b, std::size_t) {
                      const SampledPath d = radon_nikodym_path(params, spec, b);
                      std::vector<double> w_loc(m, 0.0), r_loc(m, 0.0);
                      for (std::size_t k = 0; k < m; ++k) {
                          for (std::size_t i = 1; i <= b.z_h.n_steps(); ++i) {
                              if (std::abs(b.z_h[i]) >= levels[k]) {
                                  w_loc[k] = d[i];
                                  r_loc[k] = 1.0;
                                  break;
                              }
                          }
                      }
                      std::lock_guard<std::mutex> lock(mu);
                      for (std::size_t k = 0; k < m; ++k) {
                          weighted[k] += w_loc[k];
                          raw[k] += r_loc[k];
                      }
                  });
    StoppedDiagnostics out;
    out.levels = levels;
    out.weighted_frequency.resize(m);
    out.raw_frequency.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        out.weighted_frequency[k] = weighted[k] / static_cast<double>(cfg.n_paths);
        out.raw_frequency[k] = raw[k] / static_cast<double>(cfg.n_paths);
    }
    return out;
}

double premium_drift_violation_rate(const ModelParams& params, const GirsanovSpec& spec,
                                    const DriverConfig& cfg, double bound) {
    if (!(bound > 0.0))
        throw std::invalid_argument("premium_drift_violation_rate: bound must be positive");
    const HolderIndices h = params.holder();
    const double hp = h.h_plus();
    const double rho = params.rho;
    const double rho_bar = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    std::atomic<std::size_t> violations{0};
    for_each_path(
        params, Measure::Physical, nullptr, cfg, [&](const PathBundle& b, std::size_t) {
            const std::size_t n = b.v.n_steps();
            const double dt = b.v.dt;
            std::vector<double> lambda(n);
            for (std::size_t j = 0; j < n; ++j) {
                const double t = dt * static_cast<double>(j);
                const double chi = (params.rate(t) - params.drift(t)) / std::sqrt(b.v[j]);
                lambda[j] = rho * chi + rho_bar * spec.gamma(t);
            }
            // exact moment of the kernel over each lambda subinterval
            const double scale = std::pow(dt, hp) / hp;
            for (std::size_t i = 1; i <= n; ++i) {
                double drift = 0.0;
                for (std::size_t j = 0; j < i; ++j) {
                    const auto l = static_cast<double>(i - j);
                    drift += lambda[j] * scale * (std::pow(l, hp) - std::pow(l - 1.0, hp));
                }
                if (std::abs(drift) > bound) {
                    violations.fetch_add(1, std::memory_order_relaxed);
                    break;
                }
            }
        });
    return static_cast<double>(violations.load()) / static_cast<double>(cfg.n_paths);
}

}  // namespace rvol
