#include <iostream>

#include <CLI11.hpp>

#include "common.hpp"

namespace {

void add_common_flags(CLI::App* cmd, cli::Opts& o) {
    cmd->add_option("--b", o.b, "Equilibrium split in (0,1)");
    cmd->add_option("--a", o.a, "Fixed normalized rate");
    cmd->add_option("--amin", o.amin, "Rate-rule lower envelope");
    cmd->add_option("--amax", o.amax, "Rate-rule upper envelope (= a*)");
    cmd->add_option("--kappa", o.kappa, "Gaussian bump sharpness");
    cmd->add_option("--x0", o.x0, "Initial share");
    cmd->add_option("--n", o.n, "Number of steps");
    cmd->add_option("--burn-in", o.burn_in, "Steps discarded before output");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--out", o.out, "Output path (default stdout)");
    cmd->add_option("--format", o.format, "csv|json|svg");
    cmd->add_option("--config", o.config,
                    "Flat `key = value` file; flags override its values");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed- and adaptive-rate MWU congestion dynamics toolkit"};
    app.require_subcommand(1);

    cli::Opts o;
    int (*run)(const cli::Opts&) = nullptr;

    CLI::App* simulate = app.add_subcommand("simulate", "Emit an orbit trace");
    add_common_flags(simulate, o);
    simulate->callback([&] { run = cli::run_simulate; });

    CLI::App* bifurcation =
        app.add_subcommand("bifurcation", "Grid scan of limit behavior");
    add_common_flags(bifurcation, o);
    bifurcation->add_option("--axis", o.axis,
                            "equilibrium_b|rate_a|rate_envelope_amax");
    bifurcation->add_option("--grid-lo", o.grid_lo, "Scan grid lower end");
    bifurcation->add_option("--grid-hi", o.grid_hi, "Scan grid upper end");
    bifurcation->add_option("--points", o.points, "Grid points");
    bifurcation->add_option("--keep", o.keep, "Samples kept per grid point");
    bifurcation->add_option("--x0-policy", o.x0_policy,
                            "fixed_value|seeded_random_interior");
    bifurcation->callback([&] { run = cli::run_bifurcation; });

    CLI::App* cobweb = app.add_subcommand("cobweb", "Cobweb segment export");
    add_common_flags(cobweb, o);
    cobweb->callback([&] { run = cli::run_cobweb; });

    CLI::App* analyze = app.add_subcommand("analyze", "Analysis report bundle");
    add_common_flags(analyze, o);
    analyze->add_option("--suite", o.suite, "fixed|chaos");
    analyze->add_option("--depth", o.depth, "Nested-family depth");
    analyze->callback([&] { run = cli::run_analyze; });

    CLI::App* thresholds =
        app.add_subcommand("thresholds", "Empirical threshold brackets");
    add_common_flags(thresholds, o);
    thresholds->add_option("--scan-lo", o.scan_lo, "Rate grid lower end (> 4)");
    thresholds->add_option("--scan-hi", o.scan_hi, "Rate grid upper end");
    thresholds->add_option("--scan-step", o.scan_step, "Rate grid step");
    thresholds->callback([&] { run = cli::run_thresholds; });

    // Figure-reproduction default: scans discard a long transient.
    o.burn_in = 0;
    bifurcation->parse_complete_callback([&] {
        if (bifurcation->count("--burn-in") == 0) o.burn_in = 10000;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    try {
        CLI::App* active = app.get_subcommands().at(0);
        cli::apply_config(
            o, [&](const std::string& flag) { return active->count(flag) > 0; });
        return run(o);
    } catch (const cli::UsageError& e) {
        std::cerr << "chaos-mwu: " << e.what() << '\n';
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "chaos-mwu: " << e.what() << '\n';
        return cli::kExitFailure;
    }
}
