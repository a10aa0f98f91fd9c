#include "roughvol/quad.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "roughvol/kernels.hpp"

namespace rvol {

namespace {

// Golub-Welsch on the symmetric tridiagonal recurrence matrix.
QuadRule from_recurrence(const std::vector<double>& diag, const std::vector<double>& offsq,
                         double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            const double s = std::sqrt(offsq[static_cast<std::size_t>(i)]);
            J(i, i + 1) = s;
            J(i + 1, i) = s;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        r.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        r.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return r;
}

}  // namespace

QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadRule gauss_jacobi(int n, double a, double b) {
    if (n < 1 || a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: bad parameters");
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<double> offsq(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            diag[0] = (ab + 2.0 > 0.0 || ab != 0.0) ? (b - a) / (ab + 2.0) : 0.0;
        } else {
            const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
            diag[static_cast<std::size_t>(k)] = (b * b - a * a) / den;
        }
    }
    for (int k = 1; k < n; ++k) {
        double v;
        if (k == 1) {
            v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double t = 2.0 * k + ab;
            v = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
        }
        offsq[static_cast<std::size_t>(k - 1)] = v;
    }
    const double mu0 = std::pow(2.0, ab + 1.0) * beta_fn(a + 1.0, b + 1.0);
    return from_recurrence(diag, offsq, mu0);
}

double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        int panels, int order) {
    const QuadRule r = gauss_legendre(order);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            acc += r.weights[i] * f(mid + 0.5 * h * r.nodes[i]);
        total += acc * 0.5 * h;
    }
    return total;
}

double integrate_power_singular(double b, double p, const std::function<double(double)>& f,
                                int levels, int order) {
    if (!(b > 0.0)) return 0.0;
    if (!(p > -1.0)) throw std::invalid_argument("integrate_power_singular: requires p > -1");

    const QuadRule gl = gauss_legendre(order);
    // Jacobi rule on [-1,1] with weight (1+x)^p; maps to [0,h] with weight w^p.
    const QuadRule gj = gauss_jacobi(order, 0.0, p);

    double total = 0.0;
    double hi = b;
    for (int lev = 0; lev < levels; ++lev) {
        const double lo = hi * 0.5;
        const bool last = (lev == levels - 1);
        if (last) {
            // [0, hi] with the weight handled by the Jacobi rule; w = hi*(1+x)/2.
            const double scale = std::pow(0.5 * hi, p + 1.0);
            double acc = 0.0;
            for (std::size_t i = 0; i < gj.nodes.size(); ++i)
                acc += gj.weights[i] * f(0.5 * hi * (1.0 + gj.nodes[i]));
            total += scale * acc;
            break;
        }
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double w = mid + half * gl.nodes[i];
            acc += gl.weights[i] * std::pow(w, p) * f(w);
        }
        total += acc * half;
        hi = lo;
    }
    return total;
}

}  // namespace rvol
