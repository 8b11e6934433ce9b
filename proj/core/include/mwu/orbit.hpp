#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mwu/map.hpp"
#include "mwu/rate_rule.hpp"

namespace mwu {

/// Compensated (Kahan) accumulator.  The cumulative weighted-regret sum over
/// 10^6 steps at magnitude ~10^2 keeps a round-off bound near 1e-10 this way.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// Stepper for the non-autonomous system
///   x_{n+1} = f(x_n, a_n, b),   a_n = g(S_n / n),   S_n = sum_{i<n} a_i (x_i - b)
/// with a_0 = g(0).  The fixed-rate system is the constant-rule special case.
class AdaptiveOrbit {
public:
    AdaptiveOrbit(double x0, const RateRule& rule, double b);

    void step();

    std::int64_t n() const { return n_; }
    double share() const { return x_; }
    double rate() const { return rate_; }
    /// r_n = S_n / n for n >= 1, 0 at n = 0.
    double pseudo_regret() const { return n_ == 0 ? 0.0 : regret_.value() / double(n_); }
    double cum_weighted_regret() const { return regret_.value(); }
    double equilibrium() const { return b_; }

private:
    const RateRule* rule_;
    double b_;
    std::int64_t n_;
    double x_;
    double rate_;
    KahanSum regret_;
};

struct OrbitRecord {
    std::int64_t step;
    double share;
    double rate;
    double pseudo_regret;
    double cum_weighted_regret;
};

struct OrbitTrace {
    double rate = 0.0;           ///< fixed rate, or g(0) for adaptive runs
    double equilibrium = 0.0;
    double initial_share = 0.0;
    std::int64_t burn_in = 0;
    bool adaptive = false;
    std::vector<OrbitRecord> records;  ///< strictly increasing in step
};

/// Fixed-rate orbit of n steps; the first burn_in records are dropped.
OrbitTrace iterate_fixed(double x0, const MapParams& p, std::int64_t n,
                         std::int64_t burn_in = 0);

/// Adaptive orbit of n steps under rule g with equilibrium b.
OrbitTrace iterate_adaptive(double x0, const RateRule& rule, double b,
                            std::int64_t n, std::int64_t burn_in = 0);

/// Max over recorded steps of |x_n - x0/(x0 + (1-x0) exp(S_n))| using the
/// trace's own accumulated sum.  Consistency oracle for the iteration.
/// Throws std::domain_error for boundary starts.
double closed_form_check(const OrbitTrace& trace);

}  // namespace mwu
