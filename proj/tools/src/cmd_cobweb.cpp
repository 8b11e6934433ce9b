#include <sstream>
#include <vector>

#include "common.hpp"
#include "mwu/map.hpp"
#include "mwu/orbit.hpp"
#include "mwu/serialize.hpp"

namespace cli {

namespace {

struct Segment {
    double x0, y0, x1, y1;
    const char* kind;
};

}  // namespace

int run_cobweb(const Opts& o) {
    const mwu::RateRule rule = make_rule(o);
    const double x0 = o.x0.value_or(0.3);
    const double a_star = rule.limit_rate();

    std::vector<double> xs;
    xs.reserve(std::size_t(o.n) + 1);
    mwu::AdaptiveOrbit orbit(x0, rule, o.b);
    xs.push_back(orbit.share());
    for (std::int64_t i = 0; i < o.n; ++i) {
        orbit.step();
        xs.push_back(orbit.share());
    }

    std::vector<Segment> segments;
    segments.reserve(2 * xs.size() + 1000);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        segments.push_back({xs[i], xs[i], xs[i], xs[i + 1], "cobweb"});
        segments.push_back({xs[i], xs[i + 1], xs[i + 1], xs[i + 1], "cobweb"});
    }
    // The limit map f(., a*, b) sampled at 10^3 points.
    const int curve_pts = 1000;
    double prev_t = 0.0;
    double prev_f = 0.0;
    for (int i = 0; i < curve_pts; ++i) {
        const double t = double(i) / double(curve_pts - 1);
        const double f = mwu::mwu_step(t, {a_star, o.b});
        if (i > 0) segments.push_back({prev_t, prev_f, t, f, "curve"});
        prev_t = t;
        prev_f = f;
    }

    const auto m = manifest(o, "cobweb");
    std::string payload;
    if (o.format == "csv") {
        std::ostringstream out;
        for (const auto& line : manifest_lines(m)) out << "# " << line << '\n';
        out << "x_from,y_from,x_to,y_to,kind\n";
        for (const auto& s : segments) {
            out << mwu::format_double(s.x0) << ',' << mwu::format_double(s.y0)
                << ',' << mwu::format_double(s.x1) << ','
                << mwu::format_double(s.y1) << ',' << s.kind << '\n';
        }
        payload = out.str();
    } else if (o.format == "json") {
        nlohmann::json segs = nlohmann::json::array();
        for (const auto& s : segments) {
            segs.push_back({{"x_from", s.x0},
                            {"y_from", s.y0},
                            {"x_to", s.x1},
                            {"y_to", s.y1},
                            {"kind", s.kind}});
        }
        payload = mwu::dump_json({{"manifest", manifest_json(m)},
                                  {"segments", segs}}) +
                  "\n";
    } else if (o.format == "svg") {
        std::vector<SvgSegment> svg;
        svg.reserve(segments.size());
        for (const auto& s : segments) {
            svg.push_back({s.x0, s.y0, s.x1, s.y1,
                           std::string(s.kind) == "curve"});
        }
        payload = svg_segments(svg);
    } else {
        throw UsageError("cobweb supports --format csv|json|svg");
    }
    return write_text(o.out, payload);
}

}  // namespace cli
