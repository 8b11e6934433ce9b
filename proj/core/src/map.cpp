#include "mwu/map.hpp"

#include <cmath>

namespace mwu {

namespace {
constexpr double kExpClamp = 709.0;  // ln(DBL_MAX) ~ 709.78

double clamp_exp_arg(double t) {
    if (t > kExpClamp) return kExpClamp;
    if (t < -kExpClamp) return -kExpClamp;
    return t;
}
}  // namespace

MapParams normalize(const GameSpec& spec) {
    if (!(spec.total_flow > 0.0) || !(spec.cost_coeff_1 > 0.0) ||
        !(spec.cost_coeff_2 > 0.0) || !(spec.raw_rate > 0.0)) {
        throw std::domain_error("GameSpec fields must be positive");
    }
    const double scale = spec.cost_coeff_1 + spec.cost_coeff_2;
    return MapParams{spec.total_flow * spec.raw_rate / scale,
                     spec.cost_coeff_2 / scale};
}

double logit(double x) { return std::log(x / (1.0 - x)); }

double sigmoid(double t) {
    t = clamp_exp_arg(t);
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double mwu_step(double x, const MapParams& p) {
    if (std::isnan(x)) throw std::domain_error("mwu_step: NaN input");
    if (x < 0.0 || x > 1.0) throw std::domain_error("mwu_step: x outside [0,1]");
    if (x == 0.0 || x == 1.0) return x;
    if (x == p.equilibrium) return x;
    return sigmoid(logit(x) - p.rate * (x - p.equilibrium));
}

double mwu_derivative(double x, const MapParams& p) {
    const double a = p.rate;
    const double b = p.equilibrium;
    if (x == b) return a * b * b - a * b + 1.0;
    const double q = a * x * x - a * x + 1.0;
    const double t = clamp_exp_arg(a * (x - b));
    // Pick the factoring that keeps the exponential bounded by 1.
    if (t <= 0.0) {
        const double e = std::exp(t);
        const double d = x + (1.0 - x) * e;
        return q * e / (d * d);
    }
    const double e = std::exp(-t);
    const double d = x * e + (1.0 - x);
    return q * e / (d * d);
}

CriticalPoints critical_points(double a) {
    if (!(a > 4.0)) throw NoCriticalPoints(a);
    const double r = std::sqrt(0.25 - 1.0 / a);
    return CriticalPoints{0.5 - r, 0.5 + r};
}

}  // namespace mwu
