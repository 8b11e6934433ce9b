#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwu {

/// Closed interval [lo, hi].
struct Interval {
    double lo;
    double hi;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool valid() const { return lo <= hi; }

    /// Containment with a symmetric tolerance on both endpoints.
    bool contains(const Interval& o, double tol) const {
        return lo - tol <= o.lo && o.hi <= hi + tol;
    }

    Interval widened(double eps) const { return {lo - eps, hi + eps}; }
};

inline bool disjoint(const Interval& a, const Interval& b) {
    return a.hi < b.lo || b.hi < a.lo;
}

/// Gap between two disjoint intervals; 0 if they overlap.
inline double gap(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return b.lo - a.hi;
    if (b.hi < a.lo) return a.lo - b.hi;
    return 0.0;
}

/// Hausdorff distance between two closed intervals.
inline double hausdorff(const Interval& a, const Interval& b) {
    return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

}  // namespace mwu
