#include "common.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "mwu/serialize.hpp"

namespace cli {

bool fixed_rate(const Opts& o) { return o.a.has_value(); }

mwu::RateRule make_rule(const Opts& o) {
    const bool adaptive = o.amin.has_value() || o.amax.has_value();
    if (o.a && adaptive) {
        throw UsageError("--a conflicts with --amin/--amax");
    }
    if (o.a) return mwu::RateRule::constant(*o.a);
    if (o.amin && o.amax) {
        return mwu::RateRule::gaussian_bump(*o.amin, *o.amax, o.kappa);
    }
    throw UsageError("need either --a or both --amin and --amax");
}

std::vector<std::pair<std::string, std::string>> manifest(
    const Opts& o, const std::string& command) {
    using mwu::format_double;
    std::vector<std::pair<std::string, std::string>> m;
    m.emplace_back("tool", "chaos-mwu");
    m.emplace_back("version", kVersion);
    m.emplace_back("command", command);
    m.emplace_back("b", format_double(o.b));
    if (o.a) m.emplace_back("a", format_double(*o.a));
    if (o.amin) m.emplace_back("amin", format_double(*o.amin));
    if (o.amax) m.emplace_back("amax", format_double(*o.amax));
    if (o.amin || o.amax) m.emplace_back("kappa", format_double(o.kappa));
    if (o.x0) m.emplace_back("x0", format_double(*o.x0));
    m.emplace_back("n", std::to_string(o.n));
    m.emplace_back("burn-in", std::to_string(o.burn_in));
    m.emplace_back("seed", std::to_string(o.seed));
    m.emplace_back("format", o.format);
    if (command == "bifurcation") {
        m.emplace_back("axis", o.axis);
        m.emplace_back("grid-lo", format_double(o.grid_lo));
        m.emplace_back("grid-hi", format_double(o.grid_hi));
        m.emplace_back("points", std::to_string(o.points));
        m.emplace_back("keep", std::to_string(o.keep));
        m.emplace_back("x0-policy", o.x0_policy);
    }
    if (command == "analyze") {
        m.emplace_back("suite", o.suite);
        m.emplace_back("depth", std::to_string(o.depth));
    }
    if (command == "thresholds") {
        m.emplace_back("scan-lo", format_double(o.scan_lo));
        m.emplace_back("scan-hi", format_double(o.scan_hi));
        m.emplace_back("scan-step", format_double(o.scan_step));
    }
    return m;
}

std::vector<std::string> manifest_lines(
    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::vector<std::string> lines;
    lines.reserve(entries.size());
    for (const auto& [k, v] : entries) lines.push_back(k + " = " + v);
    return lines;
}

nlohmann::json manifest_json(
    const std::vector<std::pair<std::string, std::string>>& entries) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : entries) j[k] = v;
    return j;
}

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw UsageError("config: bad value for " + key + ": " + value);
    }
    return v;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw UsageError("config: bad value for " + key + ": " + value);
    }
    return v;
}

}  // namespace

void apply_config(Opts& o,
                  const std::function<bool(const std::string&)>& on_cmdline) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) throw UsageError("config: cannot read " + o.config);

    std::string line;
    while (std::getline(in, line)) {
        std::string text = trim(line);
        // `# key = value` comment blocks from CSV output replay directly
        const bool comment = !text.empty() && text[0] == '#';
        if (comment) text = trim(text.substr(1));
        if (text.empty() || text[0] == '[') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            if (comment) continue;
            throw UsageError("config: expected `key = value`, got: " + text);
        }
        const std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        static const std::set<std::string> known = {
            "b",       "a",       "amin",      "amax",  "kappa",
            "x0",      "n",       "burn-in",   "seed",  "out",
            "format",  "axis",    "grid-lo",   "grid-hi", "points",
            "keep",    "x0-policy", "suite",   "depth", "scan-lo",
            "scan-hi", "scan-step"};
        // anything else (tool, version, command, ...) is manifest metadata
        if (!known.count(key)) continue;
        if (on_cmdline("--" + key)) continue;  // flags beat file values

        if (key == "b") o.b = parse_real(key, value);
        else if (key == "a") o.a = parse_real(key, value);
        else if (key == "amin") o.amin = parse_real(key, value);
        else if (key == "amax") o.amax = parse_real(key, value);
        else if (key == "kappa") o.kappa = parse_real(key, value);
        else if (key == "x0") o.x0 = parse_real(key, value);
        else if (key == "n") o.n = parse_int(key, value);
        else if (key == "burn-in") o.burn_in = parse_int(key, value);
        else if (key == "seed") o.seed = std::uint64_t(parse_int(key, value));
        else if (key == "out") o.out = value;
        else if (key == "format") o.format = value;
        else if (key == "axis") o.axis = value;
        else if (key == "grid-lo") o.grid_lo = parse_real(key, value);
        else if (key == "grid-hi") o.grid_hi = parse_real(key, value);
        else if (key == "points") o.points = int(parse_int(key, value));
        else if (key == "keep") o.keep = int(parse_int(key, value));
        else if (key == "x0-policy") o.x0_policy = value;
        else if (key == "suite") o.suite = value;
        else if (key == "depth") o.depth = int(parse_int(key, value));
        else if (key == "scan-lo") o.scan_lo = parse_real(key, value);
        else if (key == "scan-hi") o.scan_hi = parse_real(key, value);
        else if (key == "scan-step") o.scan_step = parse_real(key, value);
    }
}

int write_text(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return std::cout.good() ? kExitOk : kExitIo;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "chaos-mwu: cannot open " << path << " for writing\n";
        return kExitIo;
    }
    out << payload;
    out.close();
    if (!out) {
        std::cerr << "chaos-mwu: write to " << path << " failed\n";
        return kExitIo;
    }
    return kExitOk;
}

int worker_count() {
    if (const char* env = std::getenv("CHAOS_MWU_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

double unit_draw(std::uint64_t seed, std::uint64_t index) {
    // One engine per (seed, index) pair keeps draws independent of iteration
    // order; mt19937_64 output is fully specified by the standard.
    std::mt19937_64 engine(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return double(engine() >> 11) * 0x1.0p-53;
}

namespace {

constexpr int kSvgW = 800;
constexpr int kSvgH = 600;
constexpr int kMargin = 40;

struct Scale {
    double x_lo, x_hi, y_lo, y_hi;

    double px(double x) const {
        const double t = x_hi > x_lo ? (x - x_lo) / (x_hi - x_lo) : 0.5;
        return kMargin + t * (kSvgW - 2 * kMargin);
    }
    double py(double y) const {
        const double t = y_hi > y_lo ? (y - y_lo) / (y_hi - y_lo) : 0.5;
        return kSvgH - kMargin - t * (kSvgH - 2 * kMargin);
    }
};

std::string svg_open() {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgW
        << "\" height=\"" << kSvgH << "\" viewBox=\"0 0 " << kSvgW << ' '
        << kSvgH << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out.str();
}

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string svg_scatter(const std::vector<SvgPoint>& pts) {
    Scale sc{0, 1, 0, 1};
    if (!pts.empty()) {
        sc.x_lo = sc.x_hi = pts[0].x;
        sc.y_lo = sc.y_hi = pts[0].y;
        for (const auto& p : pts) {
            sc.x_lo = std::min(sc.x_lo, p.x);
            sc.x_hi = std::max(sc.x_hi, p.x);
            sc.y_lo = std::min(sc.y_lo, p.y);
            sc.y_hi = std::max(sc.y_hi, p.y);
        }
    }
    std::ostringstream out;
    out << svg_open();
    for (const auto& p : pts) {
        out << "<circle cx=\"" << fmt_px(sc.px(p.x)) << "\" cy=\""
            << fmt_px(sc.py(p.y)) << "\" r=\"0.8\" fill=\"#1f3b70\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_segments(const std::vector<SvgSegment>& segments) {
    Scale sc{0, 1, 0, 1};
    if (!segments.empty()) {
        sc.x_lo = sc.x_hi = segments[0].x0;
        sc.y_lo = sc.y_hi = segments[0].y0;
        for (const auto& s : segments) {
            for (double x : {s.x0, s.x1}) {
                sc.x_lo = std::min(sc.x_lo, x);
                sc.x_hi = std::max(sc.x_hi, x);
            }
            for (double y : {s.y0, s.y1}) {
                sc.y_lo = std::min(sc.y_lo, y);
                sc.y_hi = std::max(sc.y_hi, y);
            }
        }
    }
    std::ostringstream out;
    out << svg_open();
    for (const auto& s : segments) {
        out << "<line x1=\"" << fmt_px(sc.px(s.x0)) << "\" y1=\""
            << fmt_px(sc.py(s.y0)) << "\" x2=\"" << fmt_px(sc.px(s.x1))
            << "\" y2=\"" << fmt_px(sc.py(s.y1)) << "\" stroke=\""
            << (s.accent ? "#a03030" : "#1f3b70")
            << "\" stroke-width=\"0.8\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cli
