#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "roughvol/appshell.hpp"
#include "roughvol/cir.hpp"
#include "roughvol/forecast.hpp"
#include "roughvol/inference.hpp"
#include "roughvol/measure.hpp"
#include "roughvol/models.hpp"
#include "roughvol/premium.hpp"

namespace py = pybind11;
using namespace rvol;

namespace {

ModelParams make_params(double hurst, double nu, double rho, double xi, double s0, double rate,
                        double mu, bool compensated) {
    ModelParams p;
    p.hurst = hurst;
    p.nu = nu;
    p.rho = rho;
    p.xi0 = PiecewiseCurve::constant(xi);
    p.s0 = s0;
    p.rate = PiecewiseCurve::constant(rate);
    p.drift = PiecewiseCurve::constant(mu);
    p.compensator = compensated ? VolCompensator::Discrete : VolCompensator::None;
    p.validate();
    return p;
}

DriverConfig make_driver(std::size_t n_steps, double horizon, std::size_t n_paths, double rho,
                         double hurst, std::uint64_t seed, bool antithetic) {
    DriverConfig d;
    d.n_steps = n_steps;
    d.horizon = horizon;
    d.n_paths = n_paths;
    d.rho = rho;
    d.hurst = hurst;
    d.seed = seed;
    d.antithetic = antithetic;
    d.validate();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "rough-volatility modelling, measure verification and premium extraction";

    py::class_<RoughnessEstimate>(m, "RoughnessEstimate")
        .def_readonly("hurst", &RoughnessEstimate::hurst)
        .def_readonly("nu", &RoughnessEstimate::nu)
        .def_readonly("intercept_q2", &RoughnessEstimate::intercept_q2)
        .def_readonly("q_set", &RoughnessEstimate::q_set)
        .def_readonly("zeta", &RoughnessEstimate::zeta)
        .def_readonly("fit_r2", &RoughnessEstimate::fit_r2);

    py::class_<CorrelationEstimate>(m, "CorrelationEstimate")
        .def_readonly("rho", &CorrelationEstimate::rho)
        .def_readonly("clamped", &CorrelationEstimate::clamped);

    py::class_<MartingaleReport>(m, "MartingaleReport")
        .def_readonly("mean", &MartingaleReport::mean)
        .def_readonly("std_error", &MartingaleReport::std_error)
        .def_readonly("z_score", &MartingaleReport::z_score)
        .def_readonly("passed", &MartingaleReport::pass)
        .def_readonly("n_samples", &MartingaleReport::n_samples);

    m.def("np_constant", &np_constant, py::arg("hurst"));
    m.def("increment_variance_scale", &increment_variance_scale, py::arg("hurst"));

    m.def(
        "estimate_roughness",
        [](const std::vector<double>& vol, const std::vector<double>& q_set, std::size_t max_lag,
           double periods_per_year) {
            return estimate_roughness(vol, q_set, max_lag, periods_per_year);
        },
        py::arg("vol"), py::arg("q_set") = std::vector<double>{0.5, 1.0, 1.5, 2.0, 3.0},
        py::arg("max_lag") = 30, py::arg("periods_per_year") = 252.0);

    m.def("estimate_correlation", &estimate_correlation, py::arg("price"), py::arg("vol"),
          py::arg("hurst"));
    m.def("estimate_correlation_rolling", &estimate_correlation_rolling, py::arg("price"),
          py::arg("vol"), py::arg("hurst"), py::arg("window") = 100);

    m.def(
        "forecast_driver",
        [](const std::vector<double>& values, double dt, double hurst, double delta) {
            SampledPath p(dt, values.size() - 1);
            for (std::size_t i = 0; i < values.size(); ++i) p[i] = values[i];
            return forecast_driver(p, hurst, delta);
        },
        py::arg("values"), py::arg("dt"), py::arg("hurst"), py::arg("delta"));
    m.def("forecast_error_variance", &forecast_error_variance, py::arg("hurst"), py::arg("delta"));

    m.def(
        "solve_riccati",
        [](double kappa, double theta, double sigma, double y0, double nu, double hurst,
           double horizon, std::size_t n_steps, const std::string& convention) {
            const RiccatiSolution sol = solve_riccati(
                CirParams{kappa, theta, sigma, y0}, nu, HolderIndices(hurst), horizon, n_steps,
                convention == "statement" ? RiccatiConvention::Statement
                                          : RiccatiConvention::Proof);
            return py::make_tuple(sol.dt, sol.c, sol.a);
        },
        py::arg("kappa"), py::arg("theta"), py::arg("sigma"), py::arg("y0"), py::arg("nu"),
        py::arg("hurst"), py::arg("horizon"), py::arg("n_steps"),
        py::arg("convention") = "proof");

    m.def(
        "bootstrap_forward_variance",
        [](const std::vector<double>& tenors, const std::vector<double>& strike_vols) {
            if (tenors.size() != strike_vols.size())
                throw std::invalid_argument("tenors/strikes length mismatch");
            std::vector<VarSwapQuote> quotes;
            for (std::size_t i = 0; i < tenors.size(); ++i)
                quotes.push_back({tenors[i], strike_vols[i]});
            const PiecewiseCurve xi = bootstrap_forward_variance(quotes);
            return py::make_tuple(xi.knots(), xi.values());
        },
        py::arg("tenors"), py::arg("strike_vols"));

    m.def(
        "extract_premium",
        [](const std::vector<double>& tenors, const std::vector<double>& xi_values,
           const std::vector<double>& physical_forward, double hurst, double nu, double rho,
           const std::string& tag) {
            std::vector<double> knots{0.0};
            knots.insert(knots.end(), tenors.begin(), tenors.end());
            const ExtractedPremium out = extract_premium(
                PiecewiseCurve(knots, xi_values), tenors, physical_forward, hurst, nu, rho,
                tag == "estimation" ? NormalizationTag::Estimation : NormalizationTag::Theorem);
            return out.lambda.values();
        },
        py::arg("tenors"), py::arg("xi_values"), py::arg("physical_forward"), py::arg("hurst"),
        py::arg("nu"), py::arg("rho"), py::arg("tag") = "theorem");

    m.def(
        "premium_forward_map",
        [](const std::vector<double>& tenors, const std::vector<double>& lambda, double hurst,
           double nu, double rho, const std::string& tag) {
            return premium_forward_map(tenors, lambda, hurst, nu, rho,
                                       tag == "estimation" ? NormalizationTag::Estimation
                                                           : NormalizationTag::Theorem);
        },
        py::arg("tenors"), py::arg("lambda"), py::arg("hurst"), py::arg("nu"), py::arg("rho"),
        py::arg("tag") = "theorem");

    m.def(
        "simulate",
        [](double hurst, double nu, double rho, double xi, double s0, double rate, double mu,
           const std::string& measure, double lambda_const, std::size_t n_steps, double horizon,
           std::size_t n_paths, std::uint64_t seed, bool compensated) {
            const ModelParams params = make_params(hurst, nu, rho, xi, s0, rate, mu, compensated);
            const DriverConfig drv = make_driver(n_steps, horizon, n_paths, rho, hurst, seed, false);
            const RiskPremiumSpec prem =
                DeterministicPremium{PiecewiseCurve::constant(lambda_const)};
            const Measure meas = measure == "p" ? Measure::Physical : Measure::Pricing;
            const SimulatedMarket mkt =
                meas == Measure::Physical ? simulate_p_measure(params, drv)
                                          : simulate_q_measure(params, prem, drv);
            std::vector<std::vector<double>> v, s;
            for (const PathBundle& b : mkt.paths) {
                v.push_back(b.v.values);
                s.push_back(b.s.values);
            }
            return py::make_tuple(mkt.dt, v, s);
        },
        py::arg("hurst"), py::arg("nu"), py::arg("rho"), py::arg("xi"), py::arg("s0") = 1.0,
        py::arg("rate") = 0.0, py::arg("mu") = 0.0, py::arg("measure") = "q",
        py::arg("lambda_const") = 0.0, py::arg("n_steps") = 256, py::arg("horizon") = 1.0,
        py::arg("n_paths") = 100, py::arg("seed") = 0, py::arg("compensated") = true);

    m.def(
        "price_variance_swap",
        [](double hurst, double nu, double rho, double xi, double lambda_const,
           std::size_t n_steps, double horizon, std::size_t n_paths, std::uint64_t seed) {
            const ModelParams params = make_params(hurst, nu, rho, xi, 1.0, 0.0, 0.0, true);
            const DriverConfig drv = make_driver(n_steps, horizon, n_paths, rho, hurst, seed, false);
            const VarSwapPrice px = price_variance_swap(
                params, DeterministicPremium{PiecewiseCurve::constant(lambda_const)}, drv);
            return py::make_tuple(px.strike, px.std_error);
        },
        py::arg("hurst"), py::arg("nu"), py::arg("rho"), py::arg("xi"),
        py::arg("lambda_const") = 0.0, py::arg("n_steps") = 128, py::arg("horizon") = 1.0,
        py::arg("n_paths") = 2000, py::arg("seed") = 0);

    m.def(
        "martingale_suite",
        [](double hurst, double nu, double rho, double xi, double rate, double mu, double gamma,
           std::size_t n_steps, double horizon, std::size_t n_paths, std::uint64_t seed) {
            const ModelParams params = make_params(hurst, nu, rho, xi, 1.0, rate, mu, false);
            const DriverConfig drv = make_driver(n_steps, horizon, n_paths, rho, hurst, seed, true);
            const MartingaleSuite suite =
                run_martingale_suite(params, GirsanovSpec{PiecewiseCurve::constant(gamma)}, drv);
            return py::make_tuple(suite.density, suite.discounted_spot, suite.density_paired);
        },
        py::arg("hurst"), py::arg("nu"), py::arg("rho"), py::arg("xi"), py::arg("rate") = 0.0,
        py::arg("mu") = 0.0, py::arg("gamma") = 0.0, py::arg("n_steps") = 128,
        py::arg("horizon") = 1.0, py::arg("n_paths") = 2000, py::arg("seed") = 0);
}
