#pragma once

#include <cmath>
#include <stdexcept>

// Evaluation of the two-strategy nonatomic congestion game MWU map
//
//   f(x, a, b) = x / (x + (1-x) exp(a (x - b)))
//
// in the normalized coordinates a = N*eta/(delta+gamma), b = delta/(delta+gamma).
// All evaluation is overflow-safe: the map is computed in logit space with the
// exponent clamped to +-709, and the boundary fixed points {0, b, 1} are
// returned exactly.

namespace mwu {

/// Raw congestion-game parameters before normalization.
struct GameSpec {
    double total_flow;     ///< N > 0
    double cost_coeff_1;   ///< gamma > 0, linear cost slope of route 1
    double cost_coeff_2;   ///< delta > 0, linear cost slope of route 2
    double raw_rate;       ///< eta > 0, only used for fixed-rate runs
};

/// Normalized map parameters.
struct MapParams {
    double rate;         ///< a > 0
    double equilibrium;  ///< b in (0,1), the Nash split
};

/// Thrown by critical_points when a <= 4 (the map is monotone there).
class NoCriticalPoints : public std::domain_error {
public:
    explicit NoCriticalPoints(double a)
        : std::domain_error("map is monotone for rate <= 4, no critical points"),
          rate(a) {}
    double rate;
};

/// The two interior critical points of the map, x_max < 1/2 < x_min.
struct CriticalPoints {
    double x_max;  ///< location of the local maximum, 1/2 - sqrt(1/4 - 1/a)
    double x_min;  ///< location of the local minimum, 1/2 + sqrt(1/4 - 1/a)
};

/// Change of variables (N, eta, gamma, delta) -> (a, b).
/// Throws std::domain_error for nonpositive inputs.
MapParams normalize(const GameSpec& spec);

/// One map step. x must lie in [0,1]; throws std::domain_error on NaN.
/// Fixes 0, 1 and b exactly.
double mwu_step(double x, const MapParams& p);

/// f'(x, a, b) = (a x^2 - a x + 1) e^{a(x-b)} / (x + (1-x) e^{a(x-b)})^2.
/// At x == b returns a b^2 - a b + 1 exactly.
double mwu_derivative(double x, const MapParams& p);

/// Critical points for a > 4; throws NoCriticalPoints otherwise.
CriticalPoints critical_points(double a);

/// ln(x/(1-x)), finite for x in (0,1).
double logit(double x);

/// 1/(1+e^{-t}) with the exponent clamped to +-709.
double sigmoid(double t);

}  // namespace mwu
