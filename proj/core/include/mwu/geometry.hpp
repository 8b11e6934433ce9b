#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "mwu/interval.hpp"
#include "mwu/map.hpp"
#include "mwu/orbit.hpp"
#include "mwu/rate_rule.hpp"

namespace mwu {

/// Critical points and their images for a rate a > 4, plus the ordering flag
/// f_min < x_max < b < x_min < f_max that makes F(a) = [f_min, f_max] behave
/// as a perpetual set.
struct Envelope {
    double rate;
    double x_max;
    double x_min;
    double f_max;  ///< f(x_max, a, b)
    double f_min;  ///< f(x_min, a, b)
    bool ordered;

    Interval perpetual() const { return {f_min, f_max}; }
};

/// Closure of the perpetual sets over the rate envelope of a rule.
struct DeltaSet {
    double lo;  ///< min over a in [a_min, a_max] of f_min(a), minus widening
    double hi;  ///< max over a in [a_min, a_max] of f_max(a), plus widening
    double widening;  ///< grid-cell Lipschitz widening that was applied

    Interval interval() const { return {lo, hi}; }
};

struct PerpetualReport {
    bool forward_invariant;
    bool surjective;
    double margin;  ///< Hausdorff distance between image and F(a)
};

/// Named empirical brackets of the rate thresholds where qualitative orbit
/// behavior changes at a given b.  Missing entries did not bracket on the
/// scanned grid.
struct ThresholdEstimates {
    std::map<std::string, std::optional<double>> values;
};

/// Exact image of a closed interval under one map step: evaluated at the
/// endpoints plus any critical point inside.  Throws on inverted intervals.
Interval interval_image(const Interval& I, const MapParams& p);

/// Throws NoCriticalPoints for a <= 4.
Envelope envelope(const MapParams& p);

/// Forward-invariance and surjectivity of F(a) checked via the exact
/// interval image, with a 1e-12 tolerance on each inclusion.
PerpetualReport check_perpetual(const MapParams& p);

/// Smallest n <= n_cap with the n-fold image of I inside F(a), or nullopt.
/// I must be strictly interior to (0,1).
std::optional<std::int64_t> absorption_time_fixed(const Interval& I,
                                                  const MapParams& p,
                                                  std::int64_t n_cap);

/// Grid scan of the envelope over [a_min, a_max]; requires a_min > 4.
DeltaSet delta_set(const RateRule& rule, double b, int grid = 256);

/// Smallest n <= n_cap at which every one of `samples` equispaced adaptive
/// orbits started in I has entered Delta and stays there through n_cap.
std::optional<std::int64_t> absorption_time_adaptive(const Interval& I,
                                                     const RateRule& rule,
                                                     double b, int samples,
                                                     std::int64_t n_cap);

/// Smallest n <= n_cap with the exact n-fold image of I equal to F(a) within
/// 1e-9 Hausdorff distance.  b must be interior to I.
std::optional<std::int64_t> volume_expansion_fixed(const Interval& I,
                                                   const MapParams& p,
                                                   std::int64_t n_cap);

/// Adaptive analogue targeting F(a* - eps): the image is tracked by `samples`
/// initializations, each with its own rate state, and coverage is certified
/// by the union of chords between adjacent sample images (each chord is a
/// subset of the true image by continuity).
std::optional<std::int64_t> volume_expansion_adaptive(const Interval& I,
                                                      const RateRule& rule,
                                                      double b, double eps,
                                                      int samples,
                                                      std::int64_t n_cap);

/// Empirical bracketing of {a_b, s_b, z_b, u_b, v_b, l_b, k_b, d_b}: for each
/// named property, the smallest grid a at which the check passes and keeps
/// passing through the end of the grid.
ThresholdEstimates estimate_thresholds(double b, double lo, double hi,
                                       double step);

}  // namespace mwu
