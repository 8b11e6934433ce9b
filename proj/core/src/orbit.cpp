#include "mwu/orbit.hpp"

#include <cmath>

namespace mwu {

AdaptiveOrbit::AdaptiveOrbit(double x0, const RateRule& rule, double b)
    : rule_(&rule), b_(b), n_(0), x_(x0), rate_(rule(0.0)) {
    if (std::isnan(x0) || x0 < 0.0 || x0 > 1.0) {
        throw std::domain_error("AdaptiveOrbit: x0 outside [0,1]");
    }
}

void AdaptiveOrbit::step() {
    regret_.add(rate_ * (x_ - b_));
    x_ = mwu_step(x_, MapParams{rate_, b_});
    ++n_;
    rate_ = (*rule_)(regret_.value() / double(n_));
}

namespace {

OrbitTrace run_orbit(double x0, const RateRule& rule, double b, std::int64_t n,
                     std::int64_t burn_in, bool adaptive) {
    if (n < 0 || burn_in < 0) throw std::domain_error("orbit: negative length");
    OrbitTrace trace;
    trace.rate = rule(0.0);
    trace.equilibrium = b;
    trace.initial_share = x0;
    trace.burn_in = burn_in;
    trace.adaptive = adaptive;
    if (n > burn_in) trace.records.reserve(std::size_t(n - burn_in));

    AdaptiveOrbit orbit(x0, rule, b);
    for (std::int64_t i = 0; i < n; ++i) {
        orbit.step();
        if (orbit.n() > burn_in) {
            trace.records.push_back({orbit.n(), orbit.share(), orbit.rate(),
                                     orbit.pseudo_regret(),
                                     orbit.cum_weighted_regret()});
        }
    }
    return trace;
}

}  // namespace

OrbitTrace iterate_fixed(double x0, const MapParams& p, std::int64_t n,
                         std::int64_t burn_in) {
    return run_orbit(x0, RateRule::constant(p.rate), p.equilibrium, n, burn_in,
                     /*adaptive=*/false);
}

OrbitTrace iterate_adaptive(double x0, const RateRule& rule, double b,
                            std::int64_t n, std::int64_t burn_in) {
    return run_orbit(x0, rule, b, n, burn_in, /*adaptive=*/true);
}

double closed_form_check(const OrbitTrace& trace) {
    const double x0 = trace.initial_share;
    if (x0 <= 0.0 || x0 >= 1.0) {
        throw std::domain_error("closed_form_check: boundary start");
    }
    const double l0 = logit(x0);
    double max_err = 0.0;
    for (const auto& rec : trace.records) {
        const double s = rec.cum_weighted_regret;
        const double closed = (s == 0.0) ? x0 : sigmoid(l0 - s);
        max_err = std::max(max_err, std::abs(rec.share - closed));
    }
    return max_err;
}

}  // namespace mwu
