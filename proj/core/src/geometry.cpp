#include "mwu/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mwu/chaos.hpp"

namespace mwu {

namespace {
constexpr double kSetTol = 1e-12;

void require_strict_interior(const Interval& I) {
    if (!I.valid()) throw std::domain_error("interval is empty or inverted");
    if (I.lo <= 0.0 || I.hi >= 1.0) {
        throw std::domain_error("interval must be strictly inside (0,1)");
    }
}
}  // namespace

Interval interval_image(const Interval& I, const MapParams& p) {
    if (!I.valid()) throw std::domain_error("interval_image: empty or inverted interval");
    double lo = mwu_step(I.lo, p);
    double hi = mwu_step(I.hi, p);
    if (lo > hi) std::swap(lo, hi);
    if (p.rate > 4.0) {
        const auto cp = critical_points(p.rate);
        for (double c : {cp.x_max, cp.x_min}) {
            if (I.contains(c)) {
                const double v = mwu_step(c, p);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    return {lo, hi};
}

Envelope envelope(const MapParams& p) {
    const auto cp = critical_points(p.rate);  // throws for a <= 4
    Envelope env;
    env.rate = p.rate;
    env.x_max = cp.x_max;
    env.x_min = cp.x_min;
    env.f_max = mwu_step(cp.x_max, p);
    env.f_min = mwu_step(cp.x_min, p);
    const double b = p.equilibrium;
    env.ordered = env.f_min < env.x_max && env.x_max < b && b < env.x_min &&
                  env.x_min < env.f_max;
    return env;
}

PerpetualReport check_perpetual(const MapParams& p) {
    const Interval F = envelope(p).perpetual();
    const Interval image = interval_image(F, p);
    PerpetualReport report;
    report.forward_invariant = F.contains(image, kSetTol);
    report.surjective = image.contains(F, kSetTol);
    report.margin = hausdorff(image, F);
    return report;
}

std::optional<std::int64_t> absorption_time_fixed(const Interval& I,
                                                  const MapParams& p,
                                                  std::int64_t n_cap) {
    require_strict_interior(I);
    const Interval F = envelope(p).perpetual();
    Interval current = I;
    for (std::int64_t n = 0; n <= n_cap; ++n) {
        if (F.contains(current, kSetTol)) return n;
        current = interval_image(current, p);
    }
    return std::nullopt;
}

DeltaSet delta_set(const RateRule& rule, double b, int grid) {
    if (!(rule.a_min() > 4.0)) {
        throw std::domain_error("delta_set: requires a_min > 4");
    }
    if (grid < 2) grid = 2;
    std::vector<double> fmins, fmaxs;
    fmins.reserve(grid);
    fmaxs.reserve(grid);
    const double a0 = rule.a_min();
    const double a1 = rule.a_max();
    for (int i = 0; i < grid; ++i) {
        const double a = (grid == 1) ? a0 : a0 + (a1 - a0) * double(i) / double(grid - 1);
        const Envelope env = envelope(MapParams{a, b});
        fmins.push_back(env.f_min);
        fmaxs.push_back(env.f_max);
    }
    double widening = 0.0;
    for (int i = 1; i < grid; ++i) {
        widening = std::max(widening, std::abs(fmins[i] - fmins[i - 1]));
        widening = std::max(widening, std::abs(fmaxs[i] - fmaxs[i - 1]));
    }
    DeltaSet delta;
    delta.widening = widening;
    delta.lo = *std::min_element(fmins.begin(), fmins.end()) - widening;
    delta.hi = *std::max_element(fmaxs.begin(), fmaxs.end()) + widening;
    return delta;
}

std::optional<std::int64_t> absorption_time_adaptive(const Interval& I,
                                                     const RateRule& rule,
                                                     double b, int samples,
                                                     std::int64_t n_cap) {
    require_strict_interior(I);
    if (samples < 1) throw std::domain_error("absorption_time_adaptive: samples < 1");
    const Interval delta = delta_set(rule, b).interval();

    std::int64_t worst_entry = 0;
    for (int s = 0; s < samples; ++s) {
        const double t = (samples == 1) ? 0.5 : double(s) / double(samples - 1);
        const double x0 = I.lo + t * I.length();
        AdaptiveOrbit orbit(x0, rule, b);
        // Entry time = one past the last step found outside Delta.
        std::int64_t last_outside = delta.contains(x0) ? -1 : 0;
        for (std::int64_t n = 1; n <= n_cap; ++n) {
            orbit.step();
            if (!delta.contains(orbit.share())) last_outside = n;
        }
        if (last_outside == n_cap) return std::nullopt;
        worst_entry = std::max(worst_entry, last_outside + 1);
    }
    return worst_entry;
}

std::optional<std::int64_t> volume_expansion_fixed(const Interval& I,
                                                   const MapParams& p,
                                                   std::int64_t n_cap) {
    if (!(I.lo < p.equilibrium && p.equilibrium < I.hi)) {
        throw std::domain_error("volume_expansion_fixed: b must be interior to I");
    }
    require_strict_interior(I);
    const Interval F = envelope(p).perpetual();
    Interval current = I;
    for (std::int64_t n = 0; n <= n_cap; ++n) {
        if (hausdorff(current, F) <= 1e-9) return n;
        current = interval_image(current, p);
    }
    return std::nullopt;
}

namespace {

/// True when `target` is covered by the union of chords between adjacent
/// sample images.  Each chord [x_n(s_i), x_n(s_{i+1})] is a subset of the true
/// image of [s_i, s_{i+1}] by continuity, so this is an inner certificate.
bool chords_cover(std::vector<Interval> segments, const Interval& target,
                  double slack) {
    std::sort(segments.begin(), segments.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double reach = target.lo;
    for (const auto& seg : segments) {
        if (seg.lo > reach + slack) break;
        reach = std::max(reach, seg.hi);
        if (reach >= target.hi - slack) return true;
    }
    return reach >= target.hi - slack;
}

}  // namespace

std::optional<std::int64_t> volume_expansion_adaptive(const Interval& I,
                                                      const RateRule& rule,
                                                      double b, double eps,
                                                      int samples,
                                                      std::int64_t n_cap) {
    if (!(I.lo < b && b < I.hi)) {
        throw std::domain_error("volume_expansion_adaptive: b must be interior to I");
    }
    require_strict_interior(I);
    const double target_rate = rule.limit_rate() - eps;
    if (!(target_rate > rule.a_min())) {
        throw std::domain_error("volume_expansion_adaptive: eps too large (a*-eps <= a_min)");
    }
    if (samples < 2) throw std::domain_error("volume_expansion_adaptive: samples < 2");
    const Interval target = envelope(MapParams{target_rate, b}).perpetual();
    const double slack = target.length() / double(samples);

    std::vector<AdaptiveOrbit> orbits;
    orbits.reserve(samples);
    for (int s = 0; s < samples; ++s) {
        const double x0 = I.lo + I.length() * double(s) / double(samples - 1);
        orbits.emplace_back(x0, rule, b);
    }
    std::vector<Interval> segments(samples - 1);
    for (std::int64_t n = 0; n <= n_cap; ++n) {
        for (int s = 0; s + 1 < samples; ++s) {
            const double u = orbits[s].share();
            const double v = orbits[s + 1].share();
            segments[s] = {std::min(u, v), std::max(u, v)};
        }
        if (chords_cover(segments, target, slack)) return n;
        for (auto& orbit : orbits) orbit.step();
    }
    return std::nullopt;
}

ThresholdEstimates estimate_thresholds(double b, double lo, double hi,
                                       double step) {
    if (!(lo > 4.0)) throw std::domain_error("estimate_thresholds: grid must start above 4");
    if (!(step > 0.0) || !(hi > lo)) {
        throw std::domain_error("estimate_thresholds: bad grid");
    }

    const std::vector<std::string> names = {"a_b", "s_b", "z_b", "u_b",
                                            "v_b", "l_b", "k_b", "d_b"};
    std::map<std::string, std::vector<bool>> passes;
    std::vector<double> grid_values;
    for (double a = lo; a <= hi + 0.5 * step; a += step) grid_values.push_back(a);

    constexpr std::int64_t kCap = 2000;
    const double half_width = 0.01;
    for (double a : grid_values) {
        const MapParams p{a, b};
        const Envelope env = envelope(p);
        const PerpetualReport perp = check_perpetual(p);
        passes["a_b"].push_back(env.ordered);
        passes["s_b"].push_back(perp.forward_invariant);
        passes["k_b"].push_back(std::abs(mwu_derivative(b, p)) > 1.0);

        // z_b: a small neighborhood of b eventually covers F(a).
        // v_b: and the image settles exactly onto F(a).
        bool covers = false, equals = false;
        const Interval nbhd{std::max(1e-6, b - half_width),
                            std::min(1.0 - 1e-6, b + half_width)};
        if (env.ordered && nbhd.lo < b && b < nbhd.hi) {
            Interval current = nbhd;
            const Interval F = env.perpetual();
            for (std::int64_t n = 0; n <= kCap; ++n) {
                if (!covers && current.contains(F, 1e-9)) covers = true;
                if (hausdorff(current, F) <= 1e-9) {
                    equals = true;
                    break;
                }
                current = interval_image(current, p);
            }
        }
        passes["z_b"].push_back(covers || equals);
        passes["v_b"].push_back(equals);

        const bool p3 = period3_find(p).has_value();
        passes["u_b"].push_back(p3);
        passes["d_b"].push_back(p3 && build_turbulent_pair(p).has_value());

        // l_b: no period-two point inside [x_max, x_min].
        bool excluded = true;
        for (const auto& [xl, xr] : period2_points(p)) {
            if ((env.x_max <= xl && xl <= env.x_min) ||
                (env.x_max <= xr && xr <= env.x_min)) {
                excluded = false;
                break;
            }
        }
        passes["l_b"].push_back(excluded);
    }

    ThresholdEstimates est;
    for (const auto& name : names) {
        const auto& flags = passes[name];
        std::optional<double> bracket;
        // Smallest grid a from which the property passes through to hi.
        for (std::size_t i = flags.size(); i-- > 0;) {
            if (!flags[i]) break;
            bracket = grid_values[i];
        }
        est.values[name] = bracket;
    }
    return est;
}

}  // namespace mwu
