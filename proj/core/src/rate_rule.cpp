#include "mwu/rate_rule.hpp"

#include <algorithm>
#include <cmath>

namespace mwu {

RateRule::RateRule(RateKind kind, double a_min, double a_max, double sharpness,
                   std::vector<std::pair<double, double>> table)
    : kind_(kind), a_min_(a_min), a_max_(a_max), sharpness_(sharpness),
      table_(std::move(table)) {
    if (!(a_min > 0.0) || !(a_max >= a_min)) {
        throw std::domain_error("RateRule: need 0 < a_min <= a_max");
    }
}

RateRule RateRule::constant(double a) {
    return RateRule(RateKind::constant, a, a, 0.0, {});
}

RateRule RateRule::gaussian_bump(double a_min, double a_max, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("RateRule: kappa must be positive");
    return RateRule(RateKind::gaussian_bump, a_min, a_max, kappa, {});
}

RateRule RateRule::lookup_table(double a_min, double a_max,
                                std::vector<std::pair<double, double>> table) {
    if (table.empty()) throw std::domain_error("RateRule: empty lookup table");
    if (!std::is_sorted(table.begin(), table.end(),
                        [](auto& l, auto& r) { return l.first < r.first; })) {
        throw std::domain_error("RateRule: table must be ordered in r");
    }
    return RateRule(RateKind::lookup_table, a_min, a_max, 0.0, std::move(table));
}

double RateRule::operator()(double r) const {
    switch (kind_) {
        case RateKind::constant:
            return a_min_;
        case RateKind::gaussian_bump:
            return a_min_ + (a_max_ - a_min_) * std::exp(-sharpness_ * r * r);
        case RateKind::lookup_table: {
            double v;
            if (r <= table_.front().first) {
                v = table_.front().second;
            } else if (r >= table_.back().first) {
                v = table_.back().second;
            } else {
                auto it = std::lower_bound(
                    table_.begin(), table_.end(), r,
                    [](auto& e, double rr) { return e.first < rr; });
                auto lo = *(it - 1);
                auto hi = *it;
                const double t = (r - lo.first) / (hi.first - lo.first);
                v = lo.second + t * (hi.second - lo.second);
            }
            return std::clamp(v, a_min_, a_max_);
        }
    }
    return a_min_;  // unreachable
}

}  // namespace mwu
