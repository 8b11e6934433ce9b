#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>
#include <vector>

#include "common.hpp"
#include "mwu/orbit.hpp"
#include "mwu/serialize.hpp"

namespace cli {

namespace {

constexpr double kClusterResolution = 1e-4;

int distinct_clusters(std::vector<double> xs) {
    if (xs.empty()) return 0;
    std::sort(xs.begin(), xs.end());
    int clusters = 1;
    double anchor = xs.front();
    for (double x : xs) {
        if (x - anchor > kClusterResolution) {
            ++clusters;
            anchor = x;
        }
    }
    return clusters;
}

struct GridPoint {
    double param;
    double b;
    double x0;
    mwu::RateRule rule = mwu::RateRule::constant(5.0);
    std::vector<double> xs;
    int distinct = 0;
};

}  // namespace

int run_bifurcation(const Opts& o) {
    if (!(o.grid_lo < o.grid_hi) || o.points < 2 || o.keep < 1 || o.burn_in < 0) {
        throw UsageError("bifurcation: need grid lo < hi, points >= 2, keep >= 1");
    }
    if (o.axis != "equilibrium_b" && o.axis != "rate_a" &&
        o.axis != "rate_envelope_amax") {
        throw UsageError("bifurcation: unknown --axis " + o.axis);
    }
    if (o.axis == "rate_envelope_amax" && !o.amin) {
        throw UsageError("bifurcation: rate_envelope_amax needs --amin");
    }
    if (o.x0_policy != "fixed_value" && o.x0_policy != "seeded_random_interior") {
        throw UsageError("bifurcation: unknown --x0-policy " + o.x0_policy);
    }

    std::vector<GridPoint> grid;
    grid.reserve(o.points);
    for (int i = 0; i < o.points; ++i) {
        GridPoint gp;
        gp.param = o.grid_lo +
                   (o.grid_hi - o.grid_lo) * double(i) / double(o.points - 1);
        gp.b = o.axis == "equilibrium_b" ? gp.param : o.b;
        if (o.axis == "rate_a") {
            gp.rule = mwu::RateRule::constant(gp.param);
        } else if (o.axis == "rate_envelope_amax") {
            gp.rule = mwu::RateRule::gaussian_bump(*o.amin, gp.param, o.kappa);
        } else {
            gp.rule = make_rule(o);
        }
        gp.x0 = o.x0_policy == "fixed_value"
                    ? o.x0.value_or(0.3)
                    : 0.05 + 0.9 * unit_draw(o.seed, std::uint64_t(i));
        grid.push_back(std::move(gp));
    }

    std::atomic<std::size_t> cursor{0};
    const int workers = std::min<int>(worker_count(), o.points);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = cursor.fetch_add(1); i < grid.size();
                 i = cursor.fetch_add(1)) {
                GridPoint& gp = grid[i];
                mwu::AdaptiveOrbit orbit(gp.x0, gp.rule, gp.b);
                for (std::int64_t s = 0; s < o.burn_in; ++s) orbit.step();
                gp.xs.reserve(o.keep);
                for (int s = 0; s < o.keep; ++s) {
                    orbit.step();
                    gp.xs.push_back(orbit.share());
                }
                gp.distinct = distinct_clusters(gp.xs);
            }
        });
    }
    for (auto& t : pool) t.join();

    const auto m = manifest(o, "bifurcation");
    std::string payload;
    if (o.format == "csv") {
        std::ostringstream out;
        for (const auto& line : manifest_lines(m)) out << "# " << line << '\n';
        out << "param,x\n";
        for (const auto& gp : grid) {
            for (double x : gp.xs) {
                out << mwu::format_double(gp.param) << ','
                    << mwu::format_double(x) << '\n';
            }
        }
        // Distinct-limit-value counts at 1e-4 clustering, as trailing
        // comments so the data row count stays exactly points * keep.
        for (const auto& gp : grid) {
            out << "# count " << mwu::format_double(gp.param) << ' '
                << gp.distinct << '\n';
        }
        payload = out.str();
    } else if (o.format == "json") {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& gp : grid) {
            pts.push_back({{"param", gp.param},
                           {"x", gp.xs},
                           {"distinct", gp.distinct}});
        }
        payload = mwu::dump_json({{"manifest", manifest_json(m)},
                                  {"points", pts}}) +
                  "\n";
    } else if (o.format == "svg") {
        std::vector<SvgPoint> pts;
        pts.reserve(std::size_t(o.points) * std::size_t(o.keep));
        for (const auto& gp : grid) {
            for (double x : gp.xs) pts.push_back({gp.param, x});
        }
        payload = svg_scatter(pts);
    } else {
        throw UsageError("bifurcation supports --format csv|json|svg");
    }
    return write_text(o.out, payload);
}

}  // namespace cli
