#include <cstdlib>
#include <doctest.h>
#include <sstream>

#include "mwu/serialize.hpp"

using namespace mwu;

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -0.40000000000000002}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("dump_json renders floats at full precision") {
    nlohmann::json j = {{"x", 0.1}, {"n", 7}, {"flag", true}, {"s", "hi"}};
    const std::string text = dump_json(j, -1);
    CHECK(text == R"({"flag":true,"n":7,"s":"hi","x":0.10000000000000001})");
    // indented form parses back to the same tree
    CHECK(nlohmann::json::parse(dump_json(j)) == j);
}

TEST_CASE("dump_json is stable across calls") {
    nlohmann::json j = {{"b", 0.4}, {"a", 25.0}, {"list", {1.5, 2.5}}};
    CHECK(dump_json(j) == dump_json(j));
}

TEST_CASE("interval and envelope serialization shape") {
    const auto j = to_json(Interval{0.25, 0.75});
    CHECK(j["lo"] == 0.25);
    CHECK(j["hi"] == 0.75);
}

TEST_CASE("trace CSV schema") {
    OrbitTrace trace;
    trace.records.push_back({1, 0.31, 25.0, -0.02, -0.02});
    trace.records.push_back({2, 0.29, 25.0, -0.01, -0.02});
    std::ostringstream out;
    write_trace_csv(out, trace, {"tool = chaos-mwu", "b = 0.4"});
    const std::string text = out.str();
    CHECK(text ==
          "# tool = chaos-mwu\n"
          "# b = 0.4\n"
          "step,x,a,r\n"
          "1,0.31,25,-0.02\n"
          "2,0.28999999999999998,25,-0.01\n");
}

TEST_CASE("convergence CSV schema") {
    ConvergenceReport rep;
    rep.quantity = ConvergenceQuantity::cesaro_mean;
    rep.horizon = 1000;
    rep.reference = 0.4;
    rep.sup_value = 0.125;
    std::ostringstream out;
    write_convergence_csv(out, {rep});
    CHECK(out.str() ==
          "quantity,horizon,sup,reference\n"
          "cesaro_mean,1000,0.125,0.40000000000000002\n");
}
