#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwu/chaos.hpp"
#include "mwu/diagnostics.hpp"
#include "mwu/geometry.hpp"
#include "mwu/interval.hpp"
#include "mwu/orbit.hpp"

namespace mwu {

/// %.17g rendering, used for every real number in CSV and JSON output so the
/// values round-trip exactly.
std::string format_double(double v);

/// Deterministic JSON dump: sorted object keys (nlohmann's std::map order)
/// and %.17g floating-point rendering.  indent < 0 emits a single line.
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json to_json(const Interval& I);
nlohmann::json to_json(const Envelope& env);
nlohmann::json to_json(const DeltaSet& delta);
nlohmann::json to_json(const PerpetualReport& report);
nlohmann::json to_json(const ThresholdEstimates& est);
nlohmann::json to_json(const Period3Orbit& orbit);
nlohmann::json to_json(const TurbulentPair& pair);
nlohmann::json to_json(const NestedFamily& family);
nlohmann::json to_json(const SymbolicSchedule& schedule);
nlohmann::json to_json(const ConvergenceReport& report);
nlohmann::json to_json(const OrbitTrace& trace);

/// Trace CSV: optional `#`-prefixed comment lines (the run manifest), then
/// the `step,x,a,r` header and one row per retained record.
void write_trace_csv(std::ostream& out, const OrbitTrace& trace,
                     const std::vector<std::string>& comments = {});

/// Convergence CSV: `quantity,horizon,sup,reference` rows.
void write_convergence_csv(std::ostream& out,
                           const std::vector<ConvergenceReport>& reports,
                           const std::vector<std::string>& comments = {});

}  // namespace mwu
