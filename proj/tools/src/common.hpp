#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mwu/rate_rule.hpp"

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;
inline constexpr int kExitIo = 4;

inline constexpr const char* kVersion = "0.1.0";

/// Flag combinations that cannot be expressed as CLI11 constraints.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    double b = 0.4;
    std::optional<double> a;
    std::optional<double> amin;
    std::optional<double> amax;
    double kappa = 10.0;
    std::optional<double> x0;
    std::int64_t n = 1000;
    std::int64_t burn_in = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    std::string config;

    // bifurcation
    std::string axis = "equilibrium_b";
    double grid_lo = 0.05;
    double grid_hi = 0.95;
    int points = 181;
    int keep = 200;
    std::string x0_policy = "fixed_value";

    // analyze
    std::string suite = "fixed";
    int depth = 8;

    // thresholds
    double scan_lo = 4.5;
    double scan_hi = 30.0;
    double scan_step = 0.5;
};

bool fixed_rate(const Opts& o);

/// Constant rule from --a, or gaussian_bump from --amin/--amax/--kappa.
/// Mixing or omitting both is a usage error.
mwu::RateRule make_rule(const Opts& o);

/// Flat `key = value` manifest of every parameter relevant to `command`,
/// suitable both for embedding as CSV comments and for feeding back through
/// --config.
std::vector<std::pair<std::string, std::string>> manifest(const Opts& o,
                                                          const std::string& command);
std::vector<std::string> manifest_lines(
    const std::vector<std::pair<std::string, std::string>>& entries);
nlohmann::json manifest_json(
    const std::vector<std::pair<std::string, std::string>>& entries);

/// Loads the flat `key = value` file named by o.config (if any) into o,
/// skipping every key that was already given on the command line.  Unknown
/// keys (e.g. manifest extras like `tool` or `command`) are ignored, so a
/// saved manifest can be replayed directly.
void apply_config(Opts& o,
                  const std::function<bool(const std::string&)>& on_cmdline);

/// Writes payload to the path, or to stdout when the path is empty.
/// Returns kExitOk or kExitIo.
int write_text(const std::string& path, const std::string& payload);

int worker_count();

/// Deterministic draw in [0, 1) for (seed, index), stable across platforms.
double unit_draw(std::uint64_t seed, std::uint64_t index);

struct SvgPoint {
    double x;
    double y;
};
struct SvgSegment {
    double x0, y0, x1, y1;
    bool accent;  ///< drawn in the secondary color
};

std::string svg_scatter(const std::vector<SvgPoint>& pts);
std::string svg_segments(const std::vector<SvgSegment>& segments);

int run_simulate(const Opts& o);
int run_bifurcation(const Opts& o);
int run_cobweb(const Opts& o);
int run_analyze(const Opts& o);
int run_thresholds(const Opts& o);

}  // namespace cli
