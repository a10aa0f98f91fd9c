#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>

#include <CLI11.hpp>

#include "roughvol/appshell.hpp"
#include "roughvol/cir.hpp"
#include "roughvol/forecast.hpp"
#include "roughvol/inference.hpp"
#include "roughvol/measure.hpp"
#include "roughvol/models.hpp"
#include "roughvol/premium.hpp"

namespace {

using namespace rvol;
using app::format_number;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::size_t n_paths = 10000;
    std::size_t n_steps = 256;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_seed) {
    cmd->add_option("--config", o.config_path, "JSON configuration file");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--paths", o.n_paths, "Monte Carlo path count");
    cmd->add_option("--steps", o.n_steps, "time steps");
    auto* s = cmd->add_option("--seed", o.seed, "RNG seed (64-bit)");
    if (needs_seed) s->required();
}

app::RunConfig load(const CommonOpts& o) {
    if (o.config_path.empty()) throw CLI::ValidationError("--config is required");
    return app::load_config(o.config_path);
}

ModelParams model_from(const app::RunConfig& c) {
    ModelParams p;
    p.hurst = c.hurst;
    p.nu = c.nu;
    p.rho = c.rho;
    p.xi0 = PiecewiseCurve::constant(c.xi);
    p.rate = PiecewiseCurve::constant(c.rate);
    p.drift = PiecewiseCurve::constant(c.mu);
    p.s0 = c.s0;
    p.compensator = VolCompensator::Discrete;
    p.validate();
    return p;
}

DriverConfig driver_from(const app::RunConfig& c, const CommonOpts& o) {
    DriverConfig d;
    d.n_steps = o.n_steps;
    d.n_paths = o.n_paths;
    d.horizon = c.horizon;
    d.rho = c.rho;
    d.hurst = c.hurst;
    d.seed = o.seed.value_or(0);
    return d;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    return (std::filesystem::path(o.out_dir) / name).string();
}

int cmd_simulate(const CommonOpts& o, const std::string& measure) {
    const app::RunConfig cfg = load(o);
    const ModelParams params = model_from(cfg);
    const DriverConfig drv = driver_from(cfg, o);
    const RiskPremiumSpec premium = DeterministicPremium{PiecewiseCurve::constant(cfg.lambda)};
    const Measure m = measure == "p" ? Measure::Physical : Measure::Pricing;

    std::vector<double> mean_v(drv.n_steps + 1, 0.0), mean_s(drv.n_steps + 1, 0.0),
        sq_v(drv.n_steps + 1, 0.0);
    std::mutex mu;
    for_each_path(params, m, m == Measure::Pricing ? &premium : nullptr, drv,
                  [&](const PathBundle& b, std::size_t) {
                      std::lock_guard<std::mutex> lock(mu);
                      for (std::size_t i = 0; i <= drv.n_steps; ++i) {
                          mean_v[i] += b.v[i];
                          sq_v[i] += b.v[i] * b.v[i];
                          mean_s[i] += b.s[i];
                      }
                  });
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    const auto n = static_cast<double>(drv.n_paths);
    for (std::size_t i = 0; i <= drv.n_steps; ++i) {
        const double mv = mean_v[i] / n;
        const double var = std::max(0.0, sq_v[i] / n - mv * mv);
        rows.emplace_back(format_number(drv.dt() * static_cast<double>(i)),
                          std::vector<double>{mv, std::sqrt(var / n), mean_s[i] / n});
    }
    app::write_csv(out_path(o, "simulate.csv"), {"t", "mean_v", "se_v", "mean_s"}, rows);
    std::cout << "wrote " << out_path(o, "simulate.csv") << "\n";
    return 0;
}

int cmd_price_varswap(const CommonOpts& o) {
    const app::RunConfig cfg = load(o);
    const ModelParams params = model_from(cfg);
    const DriverConfig drv = driver_from(cfg, o);
    const RiskPremiumSpec premium = DeterministicPremium{PiecewiseCurve::constant(cfg.lambda)};
    const VarSwapPrice px = price_variance_swap(params, premium, drv);
    app::write_csv(out_path(o, "varswap.csv"), {"maturity", "strike", "std_error"},
                   {{format_number(cfg.horizon), {px.strike, px.std_error}}});
    std::cout << "strike " << format_number(px.strike) << " se " << format_number(px.std_error)
              << "\n";
    return 0;
}

int cmd_verify_martingale(const CommonOpts& o) {
    const app::RunConfig cfg = load(o);
    ModelParams params = model_from(cfg);
    params.compensator = VolCompensator::None;
    DriverConfig drv = driver_from(cfg, o);
    if (drv.n_paths % 2 != 0) ++drv.n_paths;
    drv.antithetic = true;
    const GirsanovSpec spec{PiecewiseCurve::constant(cfg.gamma)};
    const MartingaleSuite suite = run_martingale_suite(params, spec, drv);
    const auto row = [](const MartingaleReport& r) {
        return std::vector<double>{r.mean, r.std_error, r.z_score, r.pass ? 1.0 : 0.0};
    };
    app::write_csv(out_path(o, "martingale.csv"), {"test", "mean", "se", "z", "pass"},
                   {{"density", row(suite.density)},
                    {"density_antithetic", row(suite.density_paired)},
                    {"discounted_spot", row(suite.discounted_spot)}});
    const bool ok = suite.density.pass && suite.discounted_spot.pass;
    std::cout << (ok ? "PASS" : "FAIL") << " density z=" << format_number(suite.density.z_score)
              << " spot z=" << format_number(suite.discounted_spot.z_score) << "\n";
    return ok ? 0 : 1;
}

int cmd_riccati(const CommonOpts& o) {
    const app::RunConfig cfg = load(o);
    const CirParams cir{cfg.kappa, cfg.theta, cfg.sigma_cir, cfg.y0};
    const RiccatiSolution sol =
        solve_riccati(cir, cfg.nu, HolderIndices(cfg.hurst), cfg.horizon, o.n_steps);
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    for (std::size_t i = 0; i < sol.c.size(); ++i)
        rows.emplace_back(format_number(sol.dt * static_cast<double>(i)),
                          std::vector<double>{sol.c[i], sol.a[i]});
    app::write_csv(out_path(o, "riccati.csv"), {"t", "C", "A"}, rows);
    std::cout << "wrote " << out_path(o, "riccati.csv") << "\n";
    return 0;
}

int cmd_estimate(const CommonOpts& o, const std::string& vol_csv, const std::string& price_csv,
                 std::size_t window) {
    const app::VolSeriesData vols = app::read_vol_series_csv(vol_csv);
    std::optional<app::VolSeriesData> prices;
    if (!price_csv.empty()) {
        prices = app::read_vol_series_csv(price_csv);
        if (prices->rv.size() != vols.rv.size())
            throw std::runtime_error("estimate: price and vol series lengths differ");
    }
    if (vols.rv.size() < window)
        throw std::runtime_error("estimate: series shorter than the rolling window");
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    for (std::size_t end = window; end <= vols.rv.size(); ++end) {
        const std::vector<double> w(vols.rv.begin() + static_cast<std::ptrdiff_t>(end - window),
                                    vols.rv.begin() + static_cast<std::ptrdiff_t>(end));
        const RoughnessEstimate est =
            estimate_roughness(w, {0.5, 1.0, 1.5, 2.0, 3.0}, std::min<std::size_t>(30, window / 3));
        double rho = 0.0;
        if (prices) {
            const std::vector<double> p(
                prices->rv.begin() + static_cast<std::ptrdiff_t>(end - window),
                prices->rv.begin() + static_cast<std::ptrdiff_t>(end));
            rho = estimate_correlation(p, w, est.hurst).rho;
        }
        rows.emplace_back(vols.dates[end - 1], std::vector<double>{est.hurst, est.nu, rho});
    }
    app::write_csv(out_path(o, "estimates.csv"), {"window_end", "H_hat", "nu_hat", "rho_hat"},
                   rows);
    std::cout << "wrote " << out_path(o, "estimates.csv") << " (" << rows.size() << " windows)\n";
    return 0;
}

int cmd_forecast(const CommonOpts& o, const std::string& vol_csv, std::vector<double> horizon_days,
                 double hurst, double nu) {
    const app::VolSeriesData vols = app::read_vol_series_csv(vol_csv);
    const double dt = 1.0 / 252.0;
    SampledPath log_var(dt, vols.rv.size() - 1);
    for (std::size_t i = 0; i < vols.rv.size(); ++i) log_var[i] = 2.0 * std::log(vols.rv[i]);
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    for (double hd : horizon_days) {
        const double delta = hd / 252.0;
        const double mean = forecast_driver(log_var, hurst, delta);
        const double var = nu * nu * forecast_error_variance(hurst, delta);
        rows.emplace_back(format_number(hd),
                          std::vector<double>{mean, var, std::exp(mean + 0.5 * var)});
    }
    app::write_csv(out_path(o, "forecast.csv"), {"horizon_days", "mean", "var", "v_forecast"},
                   rows);
    std::cout << "wrote " << out_path(o, "forecast.csv") << "\n";
    return 0;
}

int cmd_bootstrap_xi(const CommonOpts& o, const std::string& quotes_csv) {
    const auto quote_days = app::read_varswap_quotes_csv(quotes_csv);
    if (quote_days.empty()) {
        std::cout << "no quotes: nothing to do\n";
        return 2;
    }
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    for (const auto& dq : quote_days) {
        const PiecewiseCurve xi = bootstrap_forward_variance(dq.quotes);
        for (std::size_t i = 0; i + 1 < xi.knots().size(); ++i)
            rows.emplace_back(dq.date,
                              std::vector<double>{xi.knots()[i + 1] * 365.0, xi.values()[i]});
    }
    app::write_csv(out_path(o, "xi.csv"), {"date", "tenor_days", "xi"}, rows);
    std::cout << "wrote " << out_path(o, "xi.csv") << "\n";
    return 0;
}

int cmd_pipeline(const CommonOpts& o, bool premium_only) {
    app::RunConfig cfg = load(o);
    const app::PipelineResult res = app::run_pipeline(cfg);
    if (res.quote_dates.empty()) {
        std::cout << "no quotes: nothing to do\n";
        return 2;
    }
    std::filesystem::create_directories(o.out_dir);
    app::write_pipeline_outputs(res, o.out_dir);
    if (!premium_only)
        std::cout << "H=" << format_number(res.roughness.hurst)
                  << " nu=" << format_number(res.roughness.nu)
                  << " rho=" << format_number(res.rho) << "\n";
    std::cout << "wrote outputs under " << o.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rough-volatility modelling, measure-change verification and "
                 "volatility-risk-premium extraction"};
    app.require_subcommand(1);

    CommonOpts o_sim, o_vs, o_mart, o_ric, o_est, o_fc, o_boot, o_ext, o_pipe;
    std::string sim_measure = "q";
    std::string est_vol, est_price, fc_vol, boot_quotes;
    std::size_t est_window = 100;
    std::vector<double> fc_horizons{1.0};
    double fc_h = 0.1, fc_nu = 1.0;

    auto* sim = app.add_subcommand("simulate", "simulate variance and spot paths");
    add_common(sim, o_sim, true);
    sim->add_option("--measure", sim_measure, "p (physical) or q (pricing)")
        ->check(CLI::IsMember({"p", "q"}));

    auto* vs = app.add_subcommand("price-varswap", "Monte Carlo fair variance-swap strike");
    add_common(vs, o_vs, true);

    auto* mart = app.add_subcommand("verify-martingale", "measure-change martingale suite");
    add_common(mart, o_mart, true);

    auto* ric = app.add_subcommand("riccati", "solve the fractional-CIR Riccati system");
    add_common(ric, o_ric, false);

    auto* est = app.add_subcommand("estimate", "rolling (H, nu, rho) estimation");
    add_common(est, o_est, false);
    est->add_option("--vol-csv", est_vol, "date,rv input")->required();
    est->add_option("--price-csv", est_price, "date,close input for rho");
    est->add_option("--window", est_window, "rolling window length in days");

    auto* fc = app.add_subcommand("forecast", "conditional variance forecast");
    add_common(fc, o_fc, false);
    fc->add_option("--vol-csv", fc_vol, "date,rv history")->required();
    fc->add_option("--horizon-days", fc_horizons, "forecast horizons in trading days");
    fc->add_option("--H", fc_h, "Hurst parameter");
    fc->add_option("--nu", fc_nu, "vol-of-vol");

    auto* boot = app.add_subcommand("bootstrap-xi", "forward variance from variance-swap quotes");
    add_common(boot, o_boot, false);
    boot->add_option("--quotes-csv", boot_quotes, "date,tenor_days,strike_vol input")->required();

    auto* ext = app.add_subcommand("extract-premium", "risk-premium extraction from quotes");
    add_common(ext, o_ext, false);

    auto* pipe = app.add_subcommand("run-pipeline", "full estimation + extraction workflow");
    add_common(pipe, o_pipe, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(o_sim, sim_measure);
        if (vs->parsed()) return cmd_price_varswap(o_vs);
        if (mart->parsed()) return cmd_verify_martingale(o_mart);
        if (ric->parsed()) return cmd_riccati(o_ric);
        if (est->parsed()) return cmd_estimate(o_est, est_vol, est_price, est_window);
        if (fc->parsed()) return cmd_forecast(o_fc, fc_vol, fc_horizons, fc_h, fc_nu);
        if (boot->parsed()) return cmd_bootstrap_xi(o_boot, boot_quotes);
        if (ext->parsed()) return cmd_pipeline(o_ext, true);
        if (pipe->parsed()) return cmd_pipeline(o_pipe, false);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
