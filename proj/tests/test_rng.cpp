#include <doctest.h>

#include <cmath>
#include <vector>

#include "roughvol/rng.hpp"

using namespace rvol;

TEST_CASE("streams are deterministic and replayable") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_uniform() == b.next_uniform());
    RngStream c(42, 7), d(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(c.next_normal() == d.next_normal());
}

TEST_CASE("uniforms stay strictly inside (0, 1) with sane moments") {
    RngStream rng(123, 0);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sumsq / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("distinct streams and distinct seeds decorrelate") {
    const int n = 50000;
    auto corr = [&](RngStream& x, RngStream& y) {
        double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = x.next_normal(), b = y.next_normal();
            sx += a;
            sy += b;
            sxx += a * a;
            syy += b * b;
            sxy += a * b;
        }
        const double cx = sxx / n - (sx / n) * (sx / n);
        const double cy = syy / n - (sy / n) * (sy / n);
        return (sxy / n - (sx / n) * (sy / n)) / std::sqrt(cx * cy);
    };
    {
        RngStream x(99, 0), y(99, 1);
        CHECK(std::abs(corr(x, y)) < 0.05);
    }
    {
        RngStream x(99, 3), y(100, 3);
        CHECK(std::abs(corr(x, y)) < 0.05);
    }
}

TEST_CASE("inverse_normal_cdf matches reference quantiles") {
    // reference values from an independent high-precision implementation
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.9599639845400536).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.9599639845400538).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.999) == doctest::Approx(3.090232306167813).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.0001) == doctest::Approx(-3.71901648545568).epsilon(1e-12));
    CHECK(inverse_normal_cdf(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-10));
    CHECK(inverse_normal_cdf(0.3) == doctest::Approx(-0.5244005127080407).epsilon(1e-12));
    // symmetry
    CHECK(inverse_normal_cdf(0.3) == doctest::Approx(-inverse_normal_cdf(0.7)).epsilon(1e-13));
}

TEST_CASE("normal draws have the right first four moments") {
    RngStream rng(2024, 5);
    const int n = 200000;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        m1 += x;
        m2 += x * x;
        m3 += x * x * x;
        m4 += x * x * x * x;
    }
    m1 /= n;
    m2 /= n;
    m3 /= n;
    m4 /= n;
    CHECK(std::abs(m1) < 0.01);
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(m3) < 0.05);
    CHECK(m4 == doctest::Approx(3.0).epsilon(0.05));
}
