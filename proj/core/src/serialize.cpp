#include "mwu/serialize.hpp"

#include <cstdio>
#include <ostream>

namespace mwu {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void dump_rec(const nlohmann::json& j, int indent, int level, std::string& out) {
    const auto newline = [&](int lvl) {
        if (indent < 0) return;
        out += '\n';
        out.append(std::size_t(indent) * std::size_t(lvl), ' ');
    };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(level + 1);
                out += nlohmann::json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_rec(it.value(), indent, level + 1, out);
            }
            newline(level);
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ',';
                first = false;
                newline(level + 1);
                dump_rec(el, indent, level + 1, out);
            }
            newline(level);
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();  // integers, bools, strings, null
            return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
    std::string out;
    dump_rec(j, indent, 0, out);
    return out;
}

nlohmann::json to_json(const Interval& I) {
    return {{"lo", I.lo}, {"hi", I.hi}};
}

nlohmann::json to_json(const Envelope& env) {
    return {{"rate", env.rate},   {"x_max", env.x_max}, {"x_min", env.x_min},
            {"f_max", env.f_max}, {"f_min", env.f_min}, {"ordered", env.ordered},
            {"perpetual", to_json(env.perpetual())}};
}

nlohmann::json to_json(const DeltaSet& delta) {
    return {{"lo", delta.lo}, {"hi", delta.hi}, {"widening", delta.widening}};
}

nlohmann::json to_json(const PerpetualReport& report) {
    return {{"forward_invariant", report.forward_invariant},
            {"surjective", report.surjective},
            {"margin", report.margin}};
}

nlohmann::json to_json(const ThresholdEstimates& est) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, value] : est.values) {
        if (value) {
            j[name] = *value;
        } else {
            j[name] = nullptr;
        }
    }
    return j;
}

nlohmann::json to_json(const Period3Orbit& orbit) {
    return {{"x0", orbit.x0}, {"x1", orbit.x1}, {"x2", orbit.x2}};
}

nlohmann::json to_json(const TurbulentPair& pair) {
    return {{"J", to_json(pair.J)},
            {"K", to_json(pair.K)},
            {"rate", pair.rate},
            {"equilibrium", pair.equilibrium},
            {"witness", to_json(pair.witness)},
            {"margin", pair.margin}};
}

nlohmann::json to_json(const NestedFamily& family) {
    nlohmann::json v = nlohmann::json::array();
    nlohmann::json u = nlohmann::json::array();
    for (const auto& I : family.V) v.push_back(to_json(I));
    for (const auto& I : family.U) u.push_back(to_json(I));
    return {{"base", to_json(family.base)},
            {"V", v},
            {"U", u},
            {"V_margins", family.V_margins},
            {"U_margins", family.U_margins},
            {"depth", family.depth}};
}

nlohmann::json to_json(const SymbolicSchedule& schedule) {
    nlohmann::json boxes = nlohmann::json::array();
    for (const auto& I : schedule.boxes) boxes.push_back(to_json(I));
    return {{"bits", schedule.bits},
            {"times", schedule.times},
            {"x0", schedule.x0},
            {"boxes", boxes},
            {"hit_margins", schedule.hit_margins}};
}

nlohmann::json to_json(const ConvergenceReport& report) {
    return {{"quantity", to_string(report.quantity)},
            {"horizon", report.horizon},
            {"reference", report.reference},
            {"values", report.values},
            {"sup_value", report.sup_value},
            {"sup_sample", report.sup_sample},
            {"x0s", report.x0s},
            {"deltas", report.deltas},
            {"regret_bound_ok", report.regret_bound_ok}};
}

nlohmann::json to_json(const OrbitTrace& trace) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : trace.records) {
        records.push_back({{"step", rec.step},
                           {"x", rec.share},
                           {"a", rec.rate},
                           {"r", rec.pseudo_regret}});
    }
    return {{"rate", trace.rate},
            {"equilibrium", trace.equilibrium},
            {"x0", trace.initial_share},
            {"burn_in", trace.burn_in},
            {"adaptive", trace.adaptive},
            {"records", records}};
}

void write_trace_csv(std::ostream& out, const OrbitTrace& trace,
                     const std::vector<std::string>& comments) {
    for (const auto& line : comments) out << "# " << line << '\n';
    out << "step,x,a,r\n";
    for (const auto& rec : trace.records) {
        out << rec.step << ',' << format_double(rec.share) << ','
            << format_double(rec.rate) << ','
            << format_double(rec.pseudo_regret) << '\n';
    }
}

void write_convergence_csv(std::ostream& out,
                           const std::vector<ConvergenceReport>& reports,
                           const std::vector<std::string>& comments) {
    for (const auto& line : comments) out << "# " << line << '\n';
    out << "quantity,horizon,sup,reference\n";
    for (const auto& rep : reports) {
        out << to_string(rep.quantity) << ',' << rep.horizon << ','
            << format_double(rep.sup_value) << ','
            << format_double(rep.reference) << '\n';
    }
}

}  // namespace mwu
