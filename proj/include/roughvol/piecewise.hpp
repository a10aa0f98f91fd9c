#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rvol {

/// Right-open piecewise-constant curve on a tenor partition T_0 < ... < T_n:
/// value_i applies on [T_{i-1}, T_i). Evaluation extends flat on both sides.
class PiecewiseCurve {
public:
    PiecewiseCurve() : knots_{0.0, 1.0}, values_{0.0} {}

    PiecewiseCurve(std::vector<double> knots, std::vector<double> values)
        : knots_(std::move(knots)), values_(std::move(values)) {
        if (knots_.size() < 2 || values_.size() + 1 != knots_.size())
            throw std::invalid_argument("PiecewiseCurve: need n+1 knots for n values");
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
            if (!(knots_[i] < knots_[i + 1]))
                throw std::invalid_argument("PiecewiseCurve: knots must be strictly increasing");
    }

    static PiecewiseCurve constant(double c) { return PiecewiseCurve({0.0, 1.0}, {c}); }

    double operator()(double t) const {
        if (t < knots_.front()) return values_.front();
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
            if (t < knots_[i + 1]) return values_[i];
        return values_.back();
    }

    /// Value on the interval ending at T_i, i.e. the left limit at T_i.
    double left_limit(double t) const {
        for (std::size_t i = knots_.size() - 1; i-- > 0;)
            if (t > knots_[i]) return values_[i];
        return values_.front();
    }

    double integral(double a, double b) const {
        if (a > b) throw std::domain_error("PiecewiseCurve::integral: a > b");
        double acc = 0.0;
        // flat extension outside the partition
        double lo = a;
        if (lo < knots_.front()) {
            acc += (std::min(b, knots_.front()) - lo) * values_.front();
            lo = knots_.front();
        }
        for (std::size_t i = 0; i + 1 < knots_.size() && lo < b; ++i) {
            const double hi = knots_[i + 1];
            if (hi <= lo) continue;
            const double seg_hi = std::min(hi, b);
            if (seg_hi > lo) acc += (seg_hi - lo) * values_[i];
            lo = std::max(lo, seg_hi);
        }
        if (b > knots_.back()) acc += (b - std::max(a, knots_.back())) * values_.back();
        return acc;
    }

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> knots_;
    std::vector<double> values_;
};

}  // namespace rvol
