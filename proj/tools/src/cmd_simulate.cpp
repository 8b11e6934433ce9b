#include <sstream>

#include "common.hpp"
#include "mwu/orbit.hpp"
#include "mwu/serialize.hpp"

namespace cli {

int run_simulate(const Opts& o) {
    const mwu::RateRule rule = make_rule(o);
    const double x0 = o.x0.value_or(0.3);
    const auto m = manifest(o, "simulate");

    const mwu::OrbitTrace trace =
        fixed_rate(o)
            ? mwu::iterate_fixed(x0, {*o.a, o.b}, o.n, o.burn_in)
            : mwu::iterate_adaptive(x0, rule, o.b, o.n, o.burn_in);

    std::string payload;
    if (o.format == "json") {
        nlohmann::json j = {{"manifest", manifest_json(m)},
                            {"trace", mwu::to_json(trace)}};
        payload = mwu::dump_json(j) + "\n";
    } else if (o.format == "csv") {
        std::ostringstream out;
        mwu::write_trace_csv(out, trace, manifest_lines(m));
        payload = out.str();
    } else {
        throw UsageError("simulate supports --format csv|json");
    }

    const int rc = write_text(o.out, payload);
    if (rc != kExitOk) return rc;
    if (!o.out.empty()) {
        // Sidecar run manifest for scripted reproduction.
        return write_text(o.out + ".manifest.json",
                          mwu::dump_json(manifest_json(m)) + "\n");
    }
    return kExitOk;
}

}  // namespace cli
