#pragma once

#include <functional>
#include <vector>

namespace rvol {

struct QuadRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1.
QuadRule gauss_jacobi(int n, double a, double b);

/// int_a^b f, composite Gauss-Legendre with `panels` equal panels.
double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        int panels = 8, int order = 24);

/// int_0^b w^p f(w) dw with f smooth on (0, b] (possibly steep near 0) and
/// p > -1. Dyadic panels toward the origin; the innermost uses a Jacobi rule
/// that absorbs the w^p weight exactly.
double integrate_power_singular(double b, double p, const std::function<double(double)>& f,
                                int levels = 40, int order = 24);

}  // namespace rvol
