#include <cmath>
#include <doctest.h>

#include "mwu/diagnostics.hpp"

using namespace mwu;

namespace {
const std::vector<std::int64_t> kHorizons = {1000, 10000};
}

TEST_CASE("sample_points is deterministic and interior") {
    const auto a = sample_points({0.1, 0.9}, 16, 16, 42);
    const auto b = sample_points({0.1, 0.9}, 16, 16, 42);
    REQUIRE(a.size() == 32);
    CHECK(a == b);
    for (double x : a) {
        CHECK(x >= 0.1);
        CHECK(x < 0.9 + 1e-12);
    }
    const auto c = sample_points({0.1, 0.9}, 16, 16, 43);
    CHECK(a != c);
    CHECK_THROWS_AS(sample_points({0.0, 0.5}, 4, 4, 1), std::domain_error);
}

TEST_CASE("orbit at b has zero regret, zero gaps, exact cesaro mean") {
    const auto rule = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const std::vector<double> x0s = {0.4};
    for (const auto& rep : pseudo_regret_decay(x0s, rule, 0.4, kHorizons)) {
        CHECK(rep.sup_value == 0.0);
        CHECK(rep.regret_bound_ok);
    }
    for (const auto& rep : rate_uniform_convergence(x0s, rule, 0.4, kHorizons)) {
        CHECK(rep.sup_value == 0.0);
        CHECK(rep.reference == 30.0);
    }
    for (const auto& rep : cesaro_mean(x0s, rule, 0.4, kHorizons)) {
        CHECK(rep.sup_value <= 1e-15);
    }
}

TEST_CASE("constant rule collapses rate gap and strong gap") {
    const auto rule = RateRule::constant(25.0);
    const auto x0s = sample_points({0.1, 0.9}, 8, 0, 1);
    for (const auto& rep : rate_uniform_convergence(x0s, rule, 0.4, kHorizons)) {
        CHECK(rep.sup_value == 0.0);
    }
    for (int k : {1, 2}) {
        for (const auto& rep :
             strong_convergence_gap(x0s, rule, 0.4, k, kHorizons)) {
            CHECK(rep.sup_value == 0.0);
        }
    }
}

TEST_CASE("adaptive convergence decays with the horizon") {
    const auto rule = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const auto x0s = sample_points({0.1, 0.9}, 8, 8, 7);
    const std::vector<std::int64_t> horizons = {1000, 10000, 100000};

    const auto regret = pseudo_regret_decay(x0s, rule, 0.4, horizons);
    REQUIRE(regret.size() == 3);
    CHECK(regret.back().sup_value < regret.front().sup_value);
    CHECK(regret.back().sup_value <= 1e-2);
    for (const auto& rep : regret) {
        CHECK(rep.regret_bound_ok);
        CHECK(rep.sup_sample >= 0);
        CHECK(rep.sup_sample < int(x0s.size()));
        REQUIRE(rep.values.size() == x0s.size());
    }

    const auto rate = rate_uniform_convergence(x0s, rule, 0.4, horizons);
    CHECK(rate.back().sup_value <= 1e-2);
    const auto cesaro = cesaro_mean(x0s, rule, 0.4, horizons);
    CHECK(cesaro.back().sup_value <= 1e-2);
    const auto strong = strong_convergence_gap(x0s, rule, 0.4, 2, horizons);
    CHECK(strong.back().sup_value <= 1e-2);
}

TEST_CASE("convergence also holds at the symmetric split b = 1/2") {
    const auto rule = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const auto x0s = sample_points({0.1, 0.9}, 8, 0, 1);
    const auto regret = pseudo_regret_decay(x0s, rule, 0.5, {10000});
    CHECK(regret.back().sup_value <= 1e-2);
    CHECK(regret.back().regret_bound_ok);
}

TEST_CASE("diagnostics input validation") {
    const auto rule = RateRule::constant(25.0);
    CHECK_THROWS_AS(pseudo_regret_decay({0.0}, rule, 0.4, kHorizons),
                    std::domain_error);
    CHECK_THROWS_AS(pseudo_regret_decay({0.3}, rule, 0.4, {}),
                    std::domain_error);
    CHECK_THROWS_AS(pseudo_regret_decay({0.3}, rule, 0.4, {10000, 1000}),
                    std::domain_error);
    CHECK_THROWS_AS(strong_convergence_gap({0.3}, rule, 0.4, 0, kHorizons),
                    std::domain_error);
}

TEST_CASE("reports are deterministic across repeated parallel runs") {
    const auto rule = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const auto x0s = sample_points({0.1, 0.9}, 16, 16, 3);
    const auto r1 = pseudo_regret_decay(x0s, rule, 0.4, kHorizons);
    const auto r2 = pseudo_regret_decay(x0s, rule, 0.4, kHorizons);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].values == r2[i].values);
        CHECK(r1[i].sup_value == r2[i].sup_value);
        CHECK(r1[i].sup_sample == r2[i].sup_sample);
    }
}
