#include <cmath>
#include <doctest.h>

#include "mwu/rate_rule.hpp"

using namespace mwu;

TEST_CASE("constant rule") {
    const auto g = RateRule::constant(25.0);
    CHECK(g(0.0) == 25.0);
    CHECK(g(-3.0) == 25.0);
    CHECK(g.limit_rate() == 25.0);
    CHECK(g.kind() == RateKind::constant);
}

TEST_CASE("gaussian bump") {
    const auto g = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    CHECK(g(0.0) == 30.0);
    CHECK(g.limit_rate() == 30.0);
    CHECK(g(0.5) == doctest::Approx(20.0 + 10.0 * std::exp(-2.5)).epsilon(1e-15));
    CHECK(g(0.5) == g(-0.5));  // even
    CHECK(g(10.0) == doctest::Approx(20.0).epsilon(1e-12));
    // monotone in |r|
    double prev = g(0.0);
    for (double r = 0.05; r < 2.0; r += 0.05) {
        CHECK(g(r) < prev);
        prev = g(r);
    }
    // sharper bump decays faster
    CHECK(RateRule::gaussian_bump(20.0, 30.0, 100.0)(0.3) < g(0.3));
}

TEST_CASE("lookup table interpolates and clamps") {
    const auto g = RateRule::lookup_table(5.0, 30.0,
                                          {{-1.0, 10.0}, {0.0, 30.0}, {1.0, 10.0}});
    CHECK(g(0.0) == 30.0);
    CHECK(g(0.5) == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(g(-0.25) == doctest::Approx(25.0).epsilon(1e-15));
    CHECK(g(5.0) == 10.0);    // clamp to last entry
    CHECK(g(-5.0) == 10.0);   // clamp to first entry
    // range clamp to [a_min, a_max]
    const auto h = RateRule::lookup_table(12.0, 28.0, {{0.0, 30.0}, {1.0, 5.0}});
    CHECK(h(0.0) == 28.0);
    CHECK(h(1.0) == 12.0);
}

TEST_CASE("rule validation") {
    CHECK_THROWS_AS(RateRule::constant(0.0), std::domain_error);
    CHECK_THROWS_AS(RateRule::constant(-2.0), std::domain_error);
    CHECK_THROWS_AS(RateRule::gaussian_bump(30.0, 20.0, 10.0), std::domain_error);
    CHECK_THROWS_AS(RateRule::gaussian_bump(20.0, 30.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(RateRule::lookup_table(5.0, 30.0, {}), std::domain_error);
    CHECK_THROWS_AS(RateRule::lookup_table(5.0, 30.0, {{1.0, 10.0}, {0.0, 20.0}}),
                    std::domain_error);
}
