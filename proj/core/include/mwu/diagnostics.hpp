#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwu/interval.hpp"
#include "mwu/rate_rule.hpp"

namespace mwu {

enum class ConvergenceQuantity { pseudo_regret, rate_gap, cesaro_mean, strong_gap };

std::string to_string(ConvergenceQuantity q);

/// One horizon of a convergence check.  `values` are the raw per-sample
/// quantities; sup_value = max |value - reference| with the attaining sample
/// index kept for debugging.
struct ConvergenceReport {
    ConvergenceQuantity quantity;
    std::int64_t horizon = 0;
    double reference = 0.0;
    std::vector<double> values;
    double sup_value = 0.0;
    int sup_sample = -1;
    std::vector<double> x0s;
    /// Per-sample interiority margin delta = min over the orbit so far of
    /// min(x_i, 1 - x_i); the proof bound is |r_n| <= -ln(delta^2) / n.
    std::vector<double> deltas;
    bool regret_bound_ok = true;
};

/// Equispaced interior points plus seeded-uniform random interior points.
/// The random draws map mt19937_64 words to [lo, hi) directly so the sequence
/// is identical across standard libraries.
std::vector<double> sample_points(const Interval& I, int equispaced, int random,
                                  std::uint64_t seed);

/// Sup over samples of |r_n|; asserts the -ln(delta^2)/n proof bound per
/// sample (regret_bound_ok).  One report per horizon.
std::vector<ConvergenceReport> pseudo_regret_decay(
    const std::vector<double>& x0s, const RateRule& rule, double b,
    const std::vector<std::int64_t>& horizons);

/// Sup over samples of |a_n - g(0)|.
std::vector<ConvergenceReport> rate_uniform_convergence(
    const std::vector<double>& x0s, const RateRule& rule, double b,
    const std::vector<std::int64_t>& horizons);

/// Sup over samples of |(1/(n+1)) sum_{i<=n} x_i - b|.
std::vector<ConvergenceReport> cesaro_mean(
    const std::vector<double>& x0s, const RateRule& rule, double b,
    const std::vector<std::int64_t>& horizons);

/// Sup over samples of |x_{n+k} - f^k(x_n, a*, b)| with a* = g(0).
std::vector<ConvergenceReport> strong_convergence_gap(
    const std::vector<double>& x0s, const RateRule& rule, double b, int k,
    const std::vector<std::int64_t>& horizons);

/// True when sup_value is non-increasing across the (horizon-sorted) reports.
bool sup_monotone(const std::vector<ConvergenceReport>& reports);

}  // namespace mwu
