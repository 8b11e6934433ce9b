#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "mwu/geometry.hpp"

using namespace mwu;

TEST_CASE("envelope oracle at (25, 0.4)") {
    // mpmath, 40 digits
    const Envelope env = envelope({25.0, 0.4});
    CHECK(env.x_max == doctest::Approx(0.041742430504415999341).epsilon(1e-15));
    CHECK(env.x_min == doctest::Approx(0.95825756949558400066).epsilon(1e-15));
    CHECK(env.f_min == doctest::Approx(1.9938446561842873126e-5).epsilon(1e-13));
    CHECK(env.f_max == doctest::Approx(0.99704954410683143218).epsilon(1e-15));
    CHECK(env.ordered);
}

TEST_CASE("perpetual set is invariant and surjective") {
    for (double b : {0.3, 0.4, 0.7}) {
        const auto report = check_perpetual({25.0, b});
        CHECK(report.forward_invariant);
        CHECK(report.surjective);
        CHECK(report.margin <= 1e-12);
    }
}

TEST_CASE("interval image against dense sampling") {
    const MapParams p{25.0, 0.4};
    for (const Interval I : {Interval{0.2, 0.9}, Interval{0.01, 0.05},
                             Interval{0.3, 0.5}, Interval{0.9, 0.99}}) {
        const Interval img = interval_image(I, p);
        double lo = 2.0, hi = -1.0;
        const int n = 100000;
        for (int i = 0; i <= n; ++i) {
            const double x = I.lo + I.length() * double(i) / double(n);
            const double y = mwu_step(x, p);
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        CHECK(std::abs(img.lo - lo) <= 1e-10);
        CHECK(std::abs(img.hi - hi) <= 1e-10);
    }
    CHECK_THROWS_AS(interval_image({0.5, 0.2}, p), std::domain_error);
}

TEST_CASE("interval image handles the monotone regime") {
    const MapParams p{3.0, 0.4};
    const Interval img = interval_image({0.2, 0.6}, p);
    CHECK(img.lo == mwu_step(0.2, p));
    CHECK(img.hi == mwu_step(0.6, p));
}

TEST_CASE("fixed-rate absorption") {
    const auto n = absorption_time_fixed({0.01, 0.02}, {25.0, 0.4}, 10000);
    REQUIRE(n.has_value());
    CHECK(*n <= 10000);
    // the perpetual set itself is absorbed at time 0
    const Interval F = envelope({25.0, 0.4}).perpetual();
    CHECK(absorption_time_fixed(F, {25.0, 0.4}, 10) == 0);
    CHECK_THROWS_AS(absorption_time_fixed({-0.1, 0.5}, {25.0, 0.4}, 10),
                    std::domain_error);
}

TEST_CASE("delta set covers the envelope range") {
    const auto rule = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const DeltaSet delta = delta_set(rule, 0.4);
    for (double a : {20.0, 25.0, 30.0}) {
        const Interval F = envelope({a, 0.4}).perpetual();
        CHECK(delta.interval().contains(F, 1e-12));
    }
    CHECK(delta.widening >= 0.0);
    CHECK_THROWS_AS(delta_set(RateRule::constant(3.0), 0.4), std::domain_error);
}

TEST_CASE("adaptive absorption into delta") {
    const auto rule = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const auto n = absorption_time_adaptive({0.05, 0.95}, rule, 0.4, 64, 20000);
    REQUIRE(n.has_value());
    CHECK(*n <= 20000);
}

TEST_CASE("fixed-rate volume expansion from a tiny interval") {
    const auto n =
        volume_expansion_fixed({0.399, 0.401}, {25.0, 0.4}, 1000);
    REQUIRE(n.has_value());
    CHECK(*n <= 1000);
    CHECK_THROWS_AS(volume_expansion_fixed({0.5, 0.6}, {25.0, 0.4}, 100),
                    std::domain_error);  // b not interior
}

TEST_CASE("adaptive volume expansion covers F(a* - eps)") {
    const auto rule = RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const auto n = volume_expansion_adaptive({0.399, 0.401}, rule, 0.4, 0.5,
                                             512, 10000);
    REQUIRE(n.has_value());
    CHECK_THROWS_AS(
        volume_expansion_adaptive({0.399, 0.401}, rule, 0.4, 15.0, 64, 100),
        std::domain_error);  // a* - eps <= a_min
    CHECK_THROWS_AS(
        volume_expansion_adaptive({0.5, 0.6}, rule, 0.4, 0.5, 64, 100),
        std::domain_error);
}

TEST_CASE("threshold estimation produces the eight named brackets") {
    const auto est = estimate_thresholds(0.4, 4.5, 10.0, 0.5);
    REQUIRE(est.values.size() == 8);
    for (const char* name : {"a_b", "s_b", "z_b", "u_b", "v_b", "l_b", "k_b", "d_b"}) {
        REQUIRE(est.values.count(name) == 1);
        const auto& v = est.values.at(name);
        if (v) {
            CHECK(*v >= 4.5);
            CHECK(*v <= 10.0);
        }
    }
    // |f'(b)| > 1 at b=0.4 from a b(1-b) > 2, i.e. a > 8.33; grid bracket 8.5
    REQUIRE(est.values.at("k_b").has_value());
    CHECK(*est.values.at("k_b") == doctest::Approx(8.5));
    CHECK_THROWS_AS(estimate_thresholds(0.4, 3.0, 10.0, 0.5), std::domain_error);
}
