#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mwu/interval.hpp"
#include "mwu/map.hpp"
#include "mwu/rate_rule.hpp"

namespace mwu {

/// A period-3 orbit x -> f(x) -> f^2(x) -> x.
struct Period3Orbit {
    double x0;
    double x1;  ///< f(x0)
    double x2;  ///< f(x1)
};

/// Disjoint closed intervals J, K in the interior of F(a) whose two-step
/// images each cover a neighborhood of J u K.
struct TurbulentPair {
    Interval J;
    Interval K;
    double rate;
    double equilibrium;
    Period3Orbit witness;
    double margin;  ///< smallest strict coverage margin of the double images
};

/// Shrinking families V^k <= K, U^k <= J with diam halving per level and
/// f^{2k+2} images still covering J u K.
struct NestedFamily {
    TurbulentPair base;
    std::vector<Interval> V;  ///< V[0] = K, V[k+1] inside V[k]
    std::vector<Interval> U;  ///< U[0] = J
    std::vector<double> V_margins;  ///< per-level exact-image coverage margin
    std::vector<double> U_margins;
    int depth;
};

class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrackConfig {
    Interval seed{0.0, 0.0};      ///< auto: [b - 0.05, b + 0.05] when empty
    int samples = 4096;            ///< refinement grid per level
    int max_densify = 5;           ///< grid doublings before giving up
    double inner_margin = 0.02;    ///< fractional box shrink for the retained ends
    std::int64_t burn_in_cap = 50000;
    int max_starts = 64;           ///< covering burn-in times tried for n_0
    std::int64_t start = -1;       ///< fixed n_0 (aligns schedules); -1 = auto
};

/// An initialization whose adaptive orbit visits the prescribed boxes.
struct SymbolicSchedule {
    std::vector<int> bits;             ///< 0 -> V^i, 1 -> U^i
    std::vector<std::int64_t> times;   ///< n_i, strictly increasing
    double x0;
    std::vector<Interval> boxes;       ///< A_i
    std::vector<double> hit_margins;   ///< distance of x_{n_i}(x0) to the box edge
};

/// Interior period-two pairs (x_l, x_r) with x_l < b < x_r = f(x_l), found as
/// roots of gamma_{a,b}(x) = (2b-x-1)x + (2b-x)(1-x)e^{a(x-b)}.  The fixed
/// points {0, b, 1} are excluded.
std::vector<std::pair<double, double>> period2_points(const MapParams& p);

/// Locates a period-3 orbit for a > 4 after first checking the f^3(x) < x <
/// f(x) witness condition on a scan grid.  Returns nullopt if no witness or
/// root is found.
std::optional<Period3Orbit> period3_find(const MapParams& p);

/// Constructive turbulence: anchors d, z, q, c shrunk geometrically toward
/// the period-3 orbit until the coverage conditions validate against exact
/// interval images.  The mirrored orbit shape routes through the x -> 1-x,
/// b -> 1-b conjugacy.
std::optional<TurbulentPair> build_turbulent_pair(const MapParams& p);

/// Inductive refinement of the pair to the given depth (level 0 is the pair
/// itself).  Throws PrecisionExhausted when interval widths underflow the
/// validation tolerance.
NestedFamily refine_nested(const TurbulentPair& pair, int depth);

/// Finds an initialization whose adaptive orbit lands in box A_i (V^i or U^i
/// per bit) at schedule time n_i.  The schedule offsets satisfy
/// n_i - n_{i-1} = 2i + 2 with n_0 set by an adaptive burn-in (first time the
/// chord image of the seed interval covers J u K).  The returned x0 is
/// verified by an independent fresh propagation.
std::optional<SymbolicSchedule> track_symbolic(const std::vector<int>& bits,
                                               const RateRule& rule, double b,
                                               const NestedFamily& family,
                                               const TrackConfig& cfg = {});

/// (min, max) of |x_n(x0) - x_n(y0)| over the final `tail` fraction of steps;
/// finite-horizon proxies for liminf/limsup of the orbit gap.
std::pair<double, double> scrambled_metrics(double x0, double y0,
                                            const RateRule& rule, double b,
                                            std::int64_t n, double tail = 0.5);

/// Time-averaged ln|f'| along the orbit; ln 0 clamped at -745.
double lyapunov(double x0, const RateRule& rule, double b, std::int64_t n,
                std::int64_t burn_in);
double lyapunov(double x0, const MapParams& p, std::int64_t n,
                std::int64_t burn_in);

}  // namespace mwu
