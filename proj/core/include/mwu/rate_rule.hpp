#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace mwu {

enum class RateKind { constant, gaussian_bump, lookup_table };

/// Continuous pseudo-regret -> learning-rate rule g with range [a_min, a_max].
/// The limit rate a* = g(0) is what the adaptive dynamics converge to.
class RateRule {
public:
    /// Degenerate rule g(r) = a for all r.
    static RateRule constant(double a);

    /// g(r) = a_min + (a_max - a_min) exp(-kappa r^2).  Even, nonincreasing
    /// in |r|, g(0) = a_max.
    static RateRule gaussian_bump(double a_min, double a_max, double kappa = 10.0);

    /// Piecewise-linear interpolation of ordered (r, a) pairs, clamped to the
    /// first/last entry outside the table and to [a_min, a_max] everywhere.
    static RateRule lookup_table(double a_min, double a_max,
                                 std::vector<std::pair<double, double>> table);

    double operator()(double r) const;

    double limit_rate() const { return (*this)(0.0); }
    double a_min() const { return a_min_; }
    double a_max() const { return a_max_; }
    RateKind kind() const { return kind_; }
    double sharpness() const { return sharpness_; }
    const std::vector<std::pair<double, double>>& table() const { return table_; }

private:
    RateRule(RateKind kind, double a_min, double a_max, double sharpness,
             std::vector<std::pair<double, double>> table);

    RateKind kind_;
    double a_min_;
    double a_max_;
    double sharpness_;
    std::vector<std::pair<double, double>> table_;
};

}  // namespace mwu
