#include "mwu/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "mwu/geometry.hpp"
#include "mwu/orbit.hpp"

namespace mwu {

namespace {

constexpr int kScanCells = 10000;  // root-isolation grid on [0,1]

double clamp_exp(double t) { return std::clamp(t, -700.0, 700.0); }

/// gamma_{a,b}(x) = (2b-x-1)x + (2b-x)(1-x)e^{a(x-b)}; its interior roots are
/// exactly the solutions of x + f(x) = 2b.
double gamma_ab(double x, const MapParams& p) {
    const double b = p.equilibrium;
    const double e = std::exp(clamp_exp(p.rate * (x - b)));
    return (2.0 * b - x - 1.0) * x + (2.0 * b - x) * (1.0 - x) * e;
}

template <typename F>
double bisect(F&& fn, double lo, double hi, int iters = 100) {
    double flo = fn(lo);
    for (int i = 0; i < iters && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double iterate_map(double x, const MapParams& p, int k) {
    for (int i = 0; i < k; ++i) x = mwu_step(x, p);
    return x;
}

Interval exact_image(Interval I, const MapParams& p, int k) {
    for (int i = 0; i < k; ++i) I = interval_image(I, p);
    return I;
}

double propagate_adaptive(double x0, const RateRule& rule, double b,
                          std::int64_t n) {
    AdaptiveOrbit orbit(x0, rule, b);
    for (std::int64_t i = 0; i < n; ++i) orbit.step();
    return orbit.share();
}

struct Window {
    int i;
    int j;
    Interval domain;
};

/// Minimal index windows [i, j] on which the sampled values fully cross the
/// target T: one end at or below T.lo, the other at or above T.hi.  By the
/// intermediate value theorem the image of each window covers T.
std::vector<Window> crossing_windows(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     const Interval& T) {
    std::vector<Window> windows;
    int last_low = -1;
    int last_high = -1;
    for (int j = 0; j < int(ys.size()); ++j) {
        if (ys[j] <= T.lo) {
            if (last_high >= 0) windows.push_back({last_high, j, {xs[last_high], xs[j]}});
            last_low = j;
            last_high = -1;
        } else if (ys[j] >= T.hi) {
            if (last_low >= 0) windows.push_back({last_low, j, {xs[last_low], xs[j]}});
            last_high = j;
            last_low = -1;
        }
    }
    std::sort(windows.begin(), windows.end(), [](const Window& a, const Window& b) {
        return a.domain.length() < b.domain.length();
    });
    return windows;
}

std::vector<double> linspace(const Interval& I, int points) {
    std::vector<double> xs(points);
    for (int i = 0; i < points; ++i) {
        xs[i] = I.lo + I.length() * double(i) / double(points - 1);
    }
    return xs;
}

}  // namespace

std::vector<std::pair<double, double>> period2_points(const MapParams& p) {
    const double b = p.equilibrium;
    std::vector<double> roots;
    double prev_x = 0.0;
    double prev_g = gamma_ab(prev_x, p);
    for (int cell = 1; cell <= kScanCells; ++cell) {
        const double x = double(cell) / double(kScanCells);
        const double g = gamma_ab(x, p);
        if ((prev_g <= 0.0) != (g <= 0.0)) {
            roots.push_back(bisect([&](double t) { return gamma_ab(t, p); },
                                   prev_x, x));
        }
        prev_x = x;
        prev_g = g;
    }
    std::vector<std::pair<double, double>> pairs;
    for (double r : roots) {
        // Drop the fixed points; each period-two pair is reported once, keyed
        // by its left element.
        if (r < 1e-8 || r > 1.0 - 1e-8 || std::abs(r - b) < 1e-8) continue;
        if (r < b) pairs.emplace_back(r, mwu_step(r, p));
    }
    return pairs;
}

std::optional<Period3Orbit> period3_find(const MapParams& p) {
    if (!(p.rate > 4.0)) return std::nullopt;
    const double b = p.equilibrium;
    if (b > 0.5) {
        // Mirror case via f(x, a, b) = 1 - f(1-x, a, 1-b).
        auto mirrored = period3_find(MapParams{p.rate, 1.0 - b});
        if (!mirrored) return std::nullopt;
        return Period3Orbit{1.0 - mirrored->x0, 1.0 - mirrored->x1,
                            1.0 - mirrored->x2};
    }

    // Li-Yorke witness: f^3(x) < x < f(x) for some x in (max(0, 3b-1), b).
    const double w_lo = std::max(1e-6, 3.0 * b - 1.0 + 1e-9);
    bool witness = false;
    for (int i = 1; i < kScanCells && !witness; ++i) {
        const double x = w_lo + (b - w_lo) * double(i) / double(kScanCells);
        witness = iterate_map(x, p, 3) < x && x < mwu_step(x, p);
    }
    if (!witness) return std::nullopt;

    const Envelope env = envelope(p);
    const auto residual = [&](double x) { return iterate_map(x, p, 3) - x; };
    double prev_x = 1e-9;
    double prev_h = residual(prev_x);
    for (int cell = 1; cell <= kScanCells; ++cell) {
        const double x = 1e-9 + (1.0 - 2e-9) * double(cell) / double(kScanCells);
        const double h = residual(x);
        if ((prev_h <= 0.0) != (h <= 0.0)) {
            const double root = bisect(residual, prev_x, x);
            const double x1 = mwu_step(root, p);
            const double x2 = mwu_step(x1, p);
            const bool distinct = std::abs(root - x1) >= 1e-6 &&
                                  std::abs(x1 - x2) >= 1e-6 &&
                                  std::abs(x2 - root) >= 1e-6;
            const bool interior =
                env.f_min < std::min({root, x1, x2}) &&
                std::max({root, x1, x2}) < env.f_max;
            const bool not_fixed = std::abs(root - b) >= 1e-6 &&
                                   root >= 1e-6 && root <= 1.0 - 1e-6;
            if (distinct && interior && not_fixed &&
                std::abs(residual(root)) <= 1e-10) {
                return Period3Orbit{root, x1, x2};
            }
        }
        prev_x = x;
        prev_h = h;
    }
    return std::nullopt;
}

namespace {

std::optional<TurbulentPair> construct_pair(const MapParams& p, double x,
                                            double y, double w) {
    // Orbit shape w < x < y with f(x) = y, f(y) = w, f(w) = x.
    const auto f2 = [&](double t) { return iterate_map(t, p, 2); };
    const int kShrinkCap = 60;

    const double d = bisect([&](double t) { return mwu_step(t, p) - x; }, x, y);
    if (!(d < f2(d))) return std::nullopt;

    double off = (x - w) / 4.0;
    double z = w + off;
    for (int i = 0; i < kShrinkCap && !(f2(z) > d); ++i) z = w + (off /= 2.0);
    if (!(f2(z) > d)) return std::nullopt;

    off = (x - z) / 4.0;
    double q = x - off;
    for (int i = 0; i < kShrinkCap && !(f2(q) < z && q > z); ++i) q = x - (off /= 2.0);
    if (!(f2(q) < z && q > z)) return std::nullopt;

    off = (d - x) / 4.0;
    double c = x + off;
    for (int i = 0; i < kShrinkCap && !(f2(c) < z); ++i) c = x + (off /= 2.0);
    if (!(f2(c) < z)) return std::nullopt;

    TurbulentPair pair;
    pair.J = {z, q};
    pair.K = {c, d};
    pair.rate = p.rate;
    pair.equilibrium = p.equilibrium;
    pair.witness = {x, y, w};
    if (!pair.J.valid() || !pair.K.valid()) return std::nullopt;
    if (gap(pair.J, pair.K) < 1e-9) return std::nullopt;

    const Envelope env = envelope(p);
    const Interval hull{pair.J.lo, pair.K.hi};
    if (!(env.f_min < hull.lo && hull.hi < env.f_max)) return std::nullopt;

    const Interval imgJ = exact_image(pair.J, p, 2);
    const Interval imgK = exact_image(pair.K, p, 2);
    const double margin_j = std::min(hull.lo - imgJ.lo, imgJ.hi - hull.hi);
    const double margin_k = std::min(hull.lo - imgK.lo, imgK.hi - hull.hi);
    pair.margin = std::min(margin_j, margin_k);
    if (!(pair.margin > 0.0)) return std::nullopt;
    return pair;
}

}  // namespace

std::optional<TurbulentPair> build_turbulent_pair(const MapParams& p) {
    const auto orbit = period3_find(p);
    if (!orbit) return std::nullopt;

    const double pts[3] = {orbit->x0, orbit->x1, orbit->x2};
    // Canonical rotation: the middle point with the orbit going up first.
    for (int r = 0; r < 3; ++r) {
        const double x = pts[r];
        const double y = pts[(r + 1) % 3];
        const double w = pts[(r + 2) % 3];
        if (w < x && x < y) {
            if (auto pair = construct_pair(p, x, y, w)) return pair;
        }
    }
    // Mirrored shape f(x) < x < f^2(x): reflect through the conjugacy.
    const MapParams pc{p.rate, 1.0 - p.equilibrium};
    for (int r = 0; r < 3; ++r) {
        const double x = pts[r];
        const double y = pts[(r + 1) % 3];
        const double w = pts[(r + 2) % 3];
        if (y < x && x < w) {
            auto pair = construct_pair(pc, 1.0 - x, 1.0 - y, 1.0 - w);
            if (pair) {
                TurbulentPair back = *pair;
                back.J = {1.0 - pair->J.hi, 1.0 - pair->J.lo};
                back.K = {1.0 - pair->K.hi, 1.0 - pair->K.lo};
                back.equilibrium = p.equilibrium;
                back.witness = *orbit;
                return back;
            }
        }
    }
    return std::nullopt;
}

namespace {

/// One refinement level: inside `cur` find a subinterval whose sampled
/// f^{2k+2} values fully cross J or K (a cheap locator), then certify it by
/// the exact (2k+4)-fold image covering the hull of J u K with positive
/// margin.  Returns the certified subinterval and that margin.
std::pair<Interval, double> refine_level(const Interval& cur,
                                         const TurbulentPair& pair, int k) {
    const MapParams p{pair.rate, pair.equilibrium};
    const int steps = 2 * k + 2;
    const Interval hull{std::min(pair.J.lo, pair.K.lo),
                        std::max(pair.J.hi, pair.K.hi)};
    if (cur.length() < 1e-14) {
        throw PrecisionExhausted("refine_nested: interval width underflow");
    }
    for (int samples = 4096; samples <= (1 << 18); samples *= 4) {
        const auto xs = linspace(cur, samples + 1);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            ys[i] = iterate_map(xs[i], p, steps);
        }
        auto candidates = crossing_windows(xs, ys, pair.K);
        const auto windows_j = crossing_windows(xs, ys, pair.J);
        candidates.insert(candidates.end(), windows_j.begin(), windows_j.end());
        std::sort(candidates.begin(), candidates.end(),
                  [](const Window& a, const Window& b) {
                      return a.domain.length() < b.domain.length();
                  });
        const int cap = 128;
        for (int c = 0; c < std::min<int>(cap, candidates.size()); ++c) {
            const Interval& z = candidates[c].domain;
            if (z.length() > 0.5 * cur.length()) continue;
            const Interval img = exact_image(z, p, steps + 2);
            const double margin = std::min(hull.lo - img.lo, img.hi - hull.hi);
            if (margin <= 0.0) continue;
            // The located window can be far thinner than the 2^{-1} decay the
            // family needs; exact images are monotone under inclusion, so pad
            // it out to half the parent's length to keep later levels above
            // the double-precision floor.
            // strictly under half so rounding can't break the 2^-k decay
            const double pad_len = 0.499 * cur.length();
            Interval padded{std::max(cur.lo, z.lo - 0.5 * (pad_len - z.length())),
                            0.0};
            padded.hi = std::min(cur.hi, padded.lo + pad_len);
            padded.lo = std::max(cur.lo, padded.hi - pad_len);
            const Interval pimg = exact_image(padded, p, steps + 2);
            const double pmargin =
                std::min(hull.lo - pimg.lo, pimg.hi - hull.hi);
            if (pmargin >= margin) return {padded, pmargin};
            return {z, margin};
        }
    }
    throw PrecisionExhausted("refine_nested: no refining subintervals found");
}

}  // namespace

NestedFamily refine_nested(const TurbulentPair& pair, int depth) {
    if (depth < 0 || depth > 40) {
        throw std::domain_error("refine_nested: depth must be in [0, 40]");
    }
    const MapParams p{pair.rate, pair.equilibrium};
    const Interval hull{std::min(pair.J.lo, pair.K.lo),
                        std::max(pair.J.hi, pair.K.hi)};

    NestedFamily family;
    family.base = pair;
    family.depth = depth;
    family.V = {pair.K};
    family.U = {pair.J};
    const auto level0_margin = [&](const Interval& I) {
        const Interval img = exact_image(I, p, 2);
        return std::min(hull.lo - img.lo, img.hi - hull.hi);
    };
    family.V_margins = {level0_margin(pair.K)};
    family.U_margins = {level0_margin(pair.J)};

    for (int k = 0; k < depth; ++k) {
        auto [v, vm] = refine_level(family.V.back(), pair, k);
        auto [u, um] = refine_level(family.U.back(), pair, k);
        family.V.push_back(v);
        family.V_margins.push_back(vm);
        family.U.push_back(u);
        family.U_margins.push_back(um);
    }
    return family;
}

namespace {
std::optional<SymbolicSchedule> place_schedule(
    const std::vector<int>& bits, const RateRule& rule, double b,
    const Interval& seed, const std::vector<Interval>& boxes,
    const std::vector<std::int64_t>& times, const TrackConfig& cfg);
}  // namespace

std::optional<SymbolicSchedule> track_symbolic(const std::vector<int>& bits,
                                               const RateRule& rule, double b,
                                               const NestedFamily& family,
                                               const TrackConfig& cfg) {
    const int depth = int(bits.size());
    if (depth == 0 || depth > int(family.V.size())) return std::nullopt;

    Interval seed = cfg.seed;
    if (!(seed.length() > 0.0)) seed = {b - 0.05, b + 0.05};
    const Interval hull{std::min(family.base.J.lo, family.base.K.lo),
                        std::max(family.base.J.hi, family.base.K.hi)};

    // Adaptive burn-in: times n at which the chord image of the seed covers
    // J u K.  Chords between x0-adjacent samples are subsets of the image.
    // The earliest such n may still be too soon -- the running rates have not
    // approached the limit rate the family was refined at, so the thinnest
    // boxes can be unreachable -- hence several covering starts are kept.
    std::vector<std::int64_t> starts;
    if (cfg.start >= 0) {
        starts.push_back(cfg.start);
    } else {
        const int m = 1024;
        const auto xs = linspace(seed, m + 1);
        std::vector<AdaptiveOrbit> orbits;
        orbits.reserve(xs.size());
        for (double x : xs) orbits.emplace_back(x, rule, b);
        const double slack = hull.length() / double(m);
        for (std::int64_t n = 0;
             n <= cfg.burn_in_cap && int(starts.size()) < cfg.max_starts; ++n) {
            std::vector<Interval> segments(m);
            for (int i = 0; i < m; ++i) {
                const double u = orbits[i].share();
                const double v = orbits[i + 1].share();
                segments[i] = {std::min(u, v), std::max(u, v)};
            }
            std::sort(segments.begin(), segments.end(),
                      [](const Interval& a, const Interval& c) { return a.lo < c.lo; });
            double reach = hull.lo;
            for (const auto& seg : segments) {
                if (seg.lo > reach + slack) break;
                reach = std::max(reach, seg.hi);
            }
            if (reach >= hull.hi - slack) starts.push_back(n);
            for (auto& orbit : orbits) orbit.step();
        }
        if (starts.empty()) return std::nullopt;
    }

    std::vector<Interval> boxes(depth);
    for (int i = 0; i < depth; ++i) {
        boxes[i] = bits[i] == 0 ? family.V[i] : family.U[i];
    }

    for (std::int64_t n0 : starts) {
        // n_i - n_{i-1} = 2i + 2: the smallest offsets with the required parity.
        std::vector<std::int64_t> times(depth);
        times[0] = n0;
        for (int i = 1; i < depth; ++i) times[i] = times[i - 1] + 2 * i + 2;

        if (auto schedule = place_schedule(bits, rule, b, seed, boxes, times, cfg)) {
            return schedule;
        }
    }
    return std::nullopt;
}

namespace {

/// Chooses one initialization interval per box by bisection on the true
/// adaptive propagation, then verifies a fresh forward run through every box.
std::optional<SymbolicSchedule> place_schedule(
    const std::vector<int>& bits, const RateRule& rule, double b,
    const Interval& seed, const std::vector<Interval>& boxes,
    const std::vector<std::int64_t>& times, const TrackConfig& cfg) {
    const int depth = int(bits.size());
    Interval candidate = seed;
    for (int i = 0; i < depth; ++i) {
        const Interval& box = boxes[i];
        const std::int64_t n = times[i];
        const double t_lo = box.lo + cfg.inner_margin * box.length();
        const double t_hi = box.hi - cfg.inner_margin * box.length();
        bool placed = false;
        int samples = cfg.samples;
        for (int attempt = 0; attempt <= cfg.max_densify && !placed; ++attempt) {
            const auto xs = linspace(candidate, samples + 1);
            std::vector<double> ys(xs.size());
            for (std::size_t j = 0; j < xs.size(); ++j) {
                ys[j] = propagate_adaptive(xs[j], rule, b, n);
            }
            auto windows = crossing_windows(xs, ys, box);
            const auto phi = [&](double x0) {
                return propagate_adaptive(x0, rule, b, n);
            };
            for (const auto& win : windows) {
                const double u = bisect(
                    [&](double x0) { return phi(x0) - t_lo; },
                    win.domain.lo, win.domain.hi, 60);
                const double v = bisect(
                    [&](double x0) { return phi(x0) - t_hi; },
                    win.domain.lo, win.domain.hi, 60);
                Interval next{std::min(u, v), std::max(u, v)};
                if (!(next.length() > 1e-15)) continue;
                bool inside = true;
                for (double x0 : linspace(next, 33)) {
                    const double val = phi(x0);
                    if (!(box.lo <= val && val <= box.hi)) {
                        inside = false;
                        break;
                    }
                }
                if (inside) {
                    candidate = next;
                    placed = true;
                    break;
                }
            }
            // The last box needs no room for further refinement: a single
            // initialization works, even when the retained interval would
            // collapse below one ulp.
            if (!placed && i == depth - 1) {
                const double mid = 0.5 * (box.lo + box.hi);
                for (const auto& win : windows) {
                    const double u = bisect(
                        [&](double x0) { return phi(x0) - mid; },
                        win.domain.lo, win.domain.hi, 60);
                    const double val = phi(u);
                    if (box.lo <= val && val <= box.hi) {
                        candidate = {u, u};
                        placed = true;
                        break;
                    }
                }
            }
            samples *= 2;
        }
        if (!placed) return std::nullopt;
    }

    // Independent verification by a fresh forward run; the refinement
    // machinery above is not trusted.
    for (double pick : {0.5, 0.25, 0.75, 0.1, 0.9}) {
        const double x0 = candidate.lo + pick * candidate.length();
        AdaptiveOrbit orbit(x0, rule, b);
        std::vector<double> margins(depth);
        bool ok = true;
        int next_idx = 0;
        for (std::int64_t n = 0; n <= times.back() && ok; ++n) {
            if (next_idx < depth && n == times[next_idx]) {
                const double x = orbit.share();
                const Interval& box = boxes[next_idx];
                const double m = std::min(x - box.lo, box.hi - x);
                if (m < 0.0) ok = false;
                margins[next_idx] = m;
                ++next_idx;
            }
            orbit.step();
        }
        if (ok) {
            SymbolicSchedule schedule;
            schedule.bits = bits;
            schedule.times = times;
            schedule.x0 = x0;
            schedule.boxes = boxes;
            schedule.hit_margins = margins;
            return schedule;
        }
    }
    return std::nullopt;
}

}  // namespace

std::pair<double, double> scrambled_metrics(double x0, double y0,
                                            const RateRule& rule, double b,
                                            std::int64_t n, double tail) {
    if (!(x0 > 0.0 && x0 < 1.0 && y0 > 0.0 && y0 < 1.0)) {
        if (x0 != y0) throw std::domain_error("scrambled_metrics: boundary start");
    }
    tail = std::clamp(tail, 0.0, 1.0);
    const std::int64_t start = n - std::int64_t(std::floor(tail * double(n)));
    AdaptiveOrbit a(x0, rule, b);
    AdaptiveOrbit c(y0, rule, b);
    double min_gap = std::numeric_limits<double>::infinity();
    double max_gap = 0.0;
    for (std::int64_t i = 0; i <= n; ++i) {
        if (i >= start) {
            const double g = std::abs(a.share() - c.share());
            min_gap = std::min(min_gap, g);
            max_gap = std::max(max_gap, g);
        }
        if (i < n) {
            a.step();
            c.step();
        }
    }
    if (!std::isfinite(min_gap)) min_gap = 0.0;
    return {min_gap, max_gap};
}

double lyapunov(double x0, const RateRule& rule, double b, std::int64_t n,
                std::int64_t burn_in) {
    if (!(x0 > 0.0 && x0 < 1.0)) throw std::domain_error("lyapunov: x0 must be interior");
    if (!(n > burn_in)) throw std::domain_error("lyapunov: n must exceed burn_in");
    AdaptiveOrbit orbit(x0, rule, b);
    KahanSum acc;
    for (std::int64_t i = 0; i < n; ++i) {
        if (i >= burn_in) {
            const double d =
                std::abs(mwu_derivative(orbit.share(), MapParams{orbit.rate(), b}));
            acc.add(d > 0.0 ? std::max(std::log(d), -745.0) : -745.0);
        }
        orbit.step();
    }
    return acc.value() / double(n - burn_in);
}

double lyapunov(double x0, const MapParams& p, std::int64_t n,
                std::int64_t burn_in) {
    return lyapunov(x0, RateRule::constant(p.rate), p.equilibrium, n, burn_in);
}

}  // namespace mwu
