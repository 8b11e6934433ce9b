#include "mwu/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "mwu/map.hpp"
#include "mwu/orbit.hpp"

namespace mwu {

std::string to_string(ConvergenceQuantity q) {
    switch (q) {
        case ConvergenceQuantity::pseudo_regret: return "pseudo_regret";
        case ConvergenceQuantity::rate_gap: return "rate_gap";
        case ConvergenceQuantity::cesaro_mean: return "cesaro_mean";
        case ConvergenceQuantity::strong_gap: return "strong_gap";
    }
    return "unknown";
}

std::vector<double> sample_points(const Interval& I, int equispaced, int random,
                                  std::uint64_t seed) {
    if (!I.valid() || I.lo <= 0.0 || I.hi >= 1.0) {
        throw std::domain_error("sample_points: interval must be inside (0,1)");
    }
    std::vector<double> xs;
    xs.reserve(std::size_t(equispaced + random));
    for (int i = 0; i < equispaced; ++i) {
        const double t = equispaced == 1 ? 0.5
                                         : double(i) / double(equispaced - 1);
        xs.push_back(I.lo + t * I.length());
    }
    // Map raw engine words to [lo, hi) directly; uniform_real_distribution is
    // implementation-defined and would break cross-platform determinism.
    std::mt19937_64 engine(seed);
    for (int i = 0; i < random; ++i) {
        const double u = double(engine() >> 11) * 0x1.0p-53;
        xs.push_back(I.lo + u * I.length());
    }
    return xs;
}

namespace {

int worker_count() {
    if (const char* env = std::getenv("CHAOS_MWU_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

struct Checkpoint {
    double regret = 0.0;   // r_n
    double rate = 0.0;     // a_n
    double cesaro = 0.0;   // (1/(n+1)) sum_{i<=n} x_i
    double share = 0.0;    // x_n
    double share_k = 0.0;  // x_{n+k}
    double delta = 0.0;    // min interiority margin through step n
};

std::vector<Checkpoint> run_sample(double x0, const RateRule& rule, double b,
                                   const std::vector<std::int64_t>& horizons,
                                   int k) {
    std::vector<Checkpoint> cps(horizons.size());
    const std::int64_t last = horizons.back() + k;
    AdaptiveOrbit orbit(x0, rule, b);
    KahanSum cesaro;
    double delta = std::min(x0, 1.0 - x0);
    std::size_t next = 0;    // next horizon checkpoint
    std::size_t next_k = 0;  // next x_{n+k} checkpoint
    for (std::int64_t n = 0; n <= last; ++n) {
        const double x = orbit.share();
        cesaro.add(x);
        delta = std::min(delta, std::min(x, 1.0 - x));
        if (next < horizons.size() && n == horizons[next]) {
            cps[next].regret = orbit.pseudo_regret();
            cps[next].rate = orbit.rate();
            cps[next].cesaro = cesaro.value() / double(n + 1);
            cps[next].share = x;
            cps[next].delta = delta;
            ++next;
        }
        if (next_k < horizons.size() && n == horizons[next_k] + k) {
            cps[next_k].share_k = x;
            ++next_k;
        }
        if (n < last) orbit.step();
    }
    return cps;
}

/// Per-sample checkpoints for every x0, computed in parallel.  The sample
/// order (and hence every downstream reduction) is independent of the worker
/// count.
std::vector<std::vector<Checkpoint>> run_all(
    const std::vector<double>& x0s, const RateRule& rule, double b,
    const std::vector<std::int64_t>& horizons, int k) {
    for (double x0 : x0s) {
        if (!(x0 > 0.0 && x0 < 1.0)) {
            throw std::domain_error("diagnostics: samples must be interior");
        }
    }
    if (horizons.empty()) throw std::domain_error("diagnostics: no horizons");
    std::vector<std::int64_t> sorted = horizons;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1 || sorted != horizons) {
        throw std::domain_error("diagnostics: horizons must be sorted and >= 1");
    }

    std::vector<std::vector<Checkpoint>> all(x0s.size());
    std::atomic<std::size_t> cursor{0};
    const int workers = std::min<int>(worker_count(), int(x0s.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = cursor.fetch_add(1); i < x0s.size();
                 i = cursor.fetch_add(1)) {
                all[i] = run_sample(x0s[i], rule, b, horizons, k);
            }
        });
    }
    for (auto& t : pool) t.join();
    return all;
}

std::vector<ConvergenceReport> assemble(
    ConvergenceQuantity quantity, const std::vector<double>& x0s,
    const std::vector<std::int64_t>& horizons,
    const std::vector<std::vector<Checkpoint>>& all, double reference,
    double (*extract)(const Checkpoint&)) {
    std::vector<ConvergenceReport> reports;
    reports.reserve(horizons.size());
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        ConvergenceReport rep;
        rep.quantity = quantity;
        rep.horizon = horizons[h];
        rep.reference = reference;
        rep.x0s = x0s;
        rep.values.reserve(x0s.size());
        rep.deltas.reserve(x0s.size());
        for (std::size_t s = 0; s < x0s.size(); ++s) {
            const Checkpoint& cp = all[s][h];
            rep.values.push_back(extract(cp));
            rep.deltas.push_back(cp.delta);
            const double dev = std::abs(rep.values.back() - reference);
            if (rep.sup_sample < 0 || dev > rep.sup_value) {
                rep.sup_value = dev;
                rep.sup_sample = int(s);
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace

std::vector<ConvergenceReport> pseudo_regret_decay(
    const std::vector<double>& x0s, const RateRule& rule, double b,
    const std::vector<std::int64_t>& horizons) {
    const auto all = run_all(x0s, rule, b, horizons, 0);
    auto reports = assemble(ConvergenceQuantity::pseudo_regret, x0s, horizons,
                            all, 0.0,
                            [](const Checkpoint& cp) { return cp.regret; });
    for (auto& rep : reports) {
        for (std::size_t s = 0; s < rep.values.size(); ++s) {
            const double bound =
                -2.0 * std::log(rep.deltas[s]) / double(rep.horizon);
            if (std::abs(rep.values[s]) > bound + 1e-12) {
                rep.regret_bound_ok = false;
            }
        }
    }
    return reports;
}

std::vector<ConvergenceReport> rate_uniform_convergence(
    const std::vector<double>& x0s, const RateRule& rule, double b,
    const std::vector<std::int64_t>& horizons) {
    const auto all = run_all(x0s, rule, b, horizons, 0);
    return assemble(ConvergenceQuantity::rate_gap, x0s, horizons, all,
                    rule.limit_rate(),
                    [](const Checkpoint& cp) { return cp.rate; });
}

std::vector<ConvergenceReport> cesaro_mean(
    const std::vector<double>& x0s, const RateRule& rule, double b,
    const std::vector<std::int64_t>& horizons) {
    const auto all = run_all(x0s, rule, b, horizons, 0);
    return assemble(ConvergenceQuantity::cesaro_mean, x0s, horizons, all, b,
                    [](const Checkpoint& cp) { return cp.cesaro; });
}

std::vector<ConvergenceReport> strong_convergence_gap(
    const std::vector<double>& x0s, const RateRule& rule, double b, int k,
    const std::vector<std::int64_t>& horizons) {
    if (k < 1) throw std::domain_error("strong_convergence_gap: k must be >= 1");
    const auto all = run_all(x0s, rule, b, horizons, k);
    const double a_star = rule.limit_rate();
    std::vector<ConvergenceReport> reports;
    reports.reserve(horizons.size());
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        ConvergenceReport rep;
        rep.quantity = ConvergenceQuantity::strong_gap;
        rep.horizon = horizons[h];
        rep.reference = 0.0;
        rep.x0s = x0s;
        for (std::size_t s = 0; s < x0s.size(); ++s) {
            const Checkpoint& cp = all[s][h];
            double y = cp.share;
            for (int i = 0; i < k; ++i) y = mwu_step(y, MapParams{a_star, b});
            const double gap = std::abs(cp.share_k - y);
            rep.values.push_back(gap);
            rep.deltas.push_back(cp.delta);
            if (rep.sup_sample < 0 || gap > rep.sup_value) {
                rep.sup_value = gap;
                rep.sup_sample = int(s);
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

bool sup_monotone(const std::vector<ConvergenceReport>& reports) {
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].sup_value > reports[i - 1].sup_value) return false;
    }
    return true;
}

}  // namespace mwu
