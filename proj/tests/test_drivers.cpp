#include <doctest.h>

#include <cmath>

#include "roughvol/drivers.hpp"

using namespace rvol;

namespace {

DriverConfig make_cfg(std::size_t n_steps, std::size_t n_paths, double rho, double hurst,
                      std::uint64_t seed, bool anti = false) {
    DriverConfig c;
    c.n_steps = n_steps;
    c.horizon = 1.0;
    c.n_paths = n_paths;
    c.rho = rho;
    c.hurst = hurst;
    c.seed = seed;
    c.antithetic = anti;
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("DriverConfig validation") {
    CHECK_THROWS_AS(make_cfg(0, 1, 0.0, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_cfg(8, 1, -1.5, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_cfg(8, 3, 0.0, 0.1, 0, true), std::invalid_argument);
}

TEST_CASE("simulate_drivers is reproducible and path-count stable") {
    const DriverPaths a = simulate_drivers(make_cfg(32, 4, -0.5, 0.2, 7));
    const DriverPaths b = simulate_drivers(make_cfg(32, 4, -0.5, 0.2, 7));
    const DriverPaths c = simulate_drivers(make_cfg(32, 9, -0.5, 0.2, 7));
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t i = 0; i <= 32; ++i) {
            CHECK(a.w[p][i] == b.w[p][i]);
            CHECK(a.w[p][i] == c.w[p][i]);  // extending n_paths must not perturb earlier paths
        }
}

TEST_CASE("z is the exact rho-mixture of w and w_perp") {
    const double rho = -0.7;
    const DriverPaths d = simulate_drivers(make_cfg(64, 3, rho, 0.1, 11));
    const double rho_bar = std::sqrt(1.0 - rho * rho);
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t i = 0; i <= 64; ++i)
            CHECK(d.z[p][i] ==
                  doctest::Approx(rho * d.w[p][i] + rho_bar * d.w_perp[p][i]).epsilon(1e-14));
}

TEST_CASE("antithetic mirror halves negate the drivers") {
    const DriverPaths d = simulate_drivers(make_cfg(16, 8, -0.3, 0.15, 21, true));
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t i = 0; i <= 16; ++i) {
            CHECK(d.w[p + 4][i] == doctest::Approx(-d.w[p][i]).epsilon(1e-15));
            CHECK(d.w_perp[p + 4][i] == doctest::Approx(-d.w_perp[p][i]).epsilon(1e-15));
            CHECK(d.z[p + 4][i] == doctest::Approx(-d.z[p][i]).epsilon(1e-15));
        }
}

TEST_CASE("Brownian increments have variance dt and independent steps") {
    const DriverConfig cfg = make_cfg(16, 4000, 0.0, 0.1, 31);
    const DriverPaths d = simulate_drivers(cfg);
    const double dt = cfg.dt();
    double var = 0.0, cross = 0.0;
    for (const SampledPath& w : d.w) {
        const double dw1 = w[1] - w[0], dw2 = w[2] - w[1];
        var += dw1 * dw1;
        cross += dw1 * dw2;
    }
    var /= d.w.size();
    cross /= d.w.size();
    CHECK(var == doctest::Approx(dt).epsilon(0.06));
    CHECK(std::abs(cross) < 3.0 * dt / std::sqrt(static_cast<double>(d.w.size())));
}

TEST_CASE("volterra_path matches the discrete convolution variance") {
    const DriverConfig cfg = make_cfg(64, 6000, 0.0, 0.1, 5);
    const DriverPaths d = simulate_drivers(cfg);
    const double dt = cfg.dt();
    const double hm = cfg.hurst - 0.5;

    // discrete isometry: Var[Z^H_{t_n}] = sum_m k(m dt)^2 dt
    double want = 0.0;
    for (std::size_t m = 1; m <= cfg.n_steps; ++m) want += std::pow(m * dt, 2.0 * hm) * dt;

    double got = 0.0;
    for (const SampledPath& z : d.z) {
        const SampledPath zh = volterra_path(cfg.hurst, z);
        got += zh[cfg.n_steps] * zh[cfg.n_steps];
    }
    got /= d.z.size();
    const double se = want * std::sqrt(2.0 / static_cast<double>(d.z.size()));
    CHECK(std::abs(got - want) < 3.0 * se);
}

TEST_CASE("volterra_covariance: diagonal closed form and symmetry") {
    const double hurst = 0.3;
    const Eigen::MatrixXd cov = volterra_covariance(hurst, 8, 2.0);
    REQUIRE(cov.rows() == 8);
    for (int i = 0; i < 8; ++i) {
        const double t = 2.0 * (i + 1) / 8.0;
        CHECK(cov(i, i) ==
              doctest::Approx(std::pow(t, 2.0 * hurst) / (2.0 * hurst)).epsilon(1e-10));
        for (int j = 0; j < i; ++j) CHECK(cov(i, j) == doctest::Approx(cov(j, i)).epsilon(1e-12));
    }
}

TEST_CASE("volterra_covariance off-diagonal vs direct Riemann sum") {
    const double hurst = 0.2, hm = hurst - 0.5;
    const Eigen::MatrixXd cov = volterra_covariance(hurst, 4, 1.0);
    const double ti = 0.5, tj = 1.0;
    // Cov = int_0^{ti} (ti-s)^(H-1/2) (tj-s)^(H-1/2) ds, fine midpoint sum
    const int n = 2000000;
    double acc = 0.0;
    const double h = ti / n;
    for (int k = 0; k < n; ++k) {
        const double s = (k + 0.5) * h;
        acc += std::pow(ti - s, hm) * std::pow(tj - s, hm) * h;
    }
    CHECK(cov(1, 3) == doctest::Approx(acc).epsilon(1e-5));
}

TEST_CASE("Cholesky oracle agrees with the exact covariance in law") {
    DriverConfig cfg = make_cfg(16, 4000, 0.0, 0.25, 13);
    const std::vector<SampledPath> paths = volterra_paths_cholesky(cfg);
    const Eigen::MatrixXd cov = volterra_covariance(cfg.hurst, cfg.n_steps, cfg.horizon);
    // terminal variance and one lagged covariance, 3 MC standard errors
    double v_end = 0.0, c_mid = 0.0;
    for (const SampledPath& p : paths) {
        v_end += p[16] * p[16];
        c_mid += p[8] * p[16];
    }
    v_end /= paths.size();
    c_mid /= paths.size();
    const double se_v = cov(15, 15) * std::sqrt(2.0 / static_cast<double>(paths.size()));
    CHECK(std::abs(v_end - cov(15, 15)) < 3.0 * se_v);
    const double se_c =
        std::sqrt((cov(7, 7) * cov(15, 15) + cov(7, 15) * cov(7, 15)) /
                  static_cast<double>(paths.size()));
    CHECK(std::abs(c_mid - cov(7, 15)) < 3.0 * se_c);
}

TEST_CASE("terminal correlation between Z^H and W follows the kernel moment") {
    // Corr(Z^H_1, Z_1) = sqrt(2H) / (H + 1/2) in continuous time; with
    // rho = 1 the driver Z is W itself
    const double hurst = 0.2;
    const DriverConfig cfg = make_cfg(256, 20000, 1.0, hurst, 17);
    const DriverPaths d = simulate_drivers(cfg);
    double szw = 0.0, szz = 0.0, sww = 0.0;
    for (std::size_t p = 0; p < d.z.size(); ++p) {
        const SampledPath zh = volterra_path(hurst, d.z[p]);
        const double a = zh[cfg.n_steps], b = d.w[p][cfg.n_steps];
        szw += a * b;
        szz += a * a;
        sww += b * b;
    }
    const double corr = szw / std::sqrt(szz * sww);
    const double want = std::sqrt(2.0 * hurst) / (hurst + 0.5);
    CHECK(corr == doctest::Approx(want).epsilon(0.03));
}
