#include <sstream>

#include "common.hpp"
#include "mwu/geometry.hpp"
#include "mwu/serialize.hpp"

namespace cli {

int run_thresholds(const Opts& o) {
    const auto est = mwu::estimate_thresholds(o.b, o.scan_lo, o.scan_hi,
                                              o.scan_step);
    const auto m = manifest(o, "thresholds");
    std::string payload;
    if (o.format == "json") {
        payload = mwu::dump_json({{"manifest", manifest_json(m)},
                                  {"thresholds", mwu::to_json(est)}}) +
                  "\n";
    } else if (o.format == "csv") {
        std::ostringstream out;
        for (const auto& line : manifest_lines(m)) out << "# " << line << '\n';
        out << "name,value\n";
        for (const auto& [name, value] : est.values) {
            out << name << ','
                << (value ? mwu::format_double(*value) : std::string()) << '\n';
        }
        payload = out.str();
    } else {
        throw UsageError("thresholds supports --format csv|json");
    }
    return write_text(o.out, payload);
}

}  // namespace cli
