#include <cmath>
#include <doctest.h>

#include "mwu/map.hpp"

using namespace mwu;

namespace {
// Reference map evaluated the naive way; safe for moderate exponents.
double naive_f(double x, double a, double b) {
    return x / (x + (1.0 - x) * std::exp(a * (x - b)));
}
}  // namespace

TEST_CASE("normalize rescales game parameters") {
    const MapParams p = normalize({10.0, 3.0, 2.0, 1.0});
    CHECK(p.rate == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.equilibrium == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS(normalize({-1.0, 3.0, 2.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(normalize({10.0, 0.0, 2.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(normalize({10.0, 3.0, -2.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(normalize({10.0, 3.0, 2.0, 0.0}), std::domain_error);
}

TEST_CASE("fixed points are exact") {
    for (double a : {3.0, 8.0, 25.0, 100.0}) {
        for (double b : {0.3, 0.4, 0.5, 0.7}) {
            const MapParams p{a, b};
            CHECK(mwu_step(0.0, p) == 0.0);
            CHECK(mwu_step(1.0, p) == 1.0);
            CHECK(mwu_step(b, p) == b);
        }
    }
}

TEST_CASE("map value oracle") {
    // mpmath, 40 digits: f(0.5, 8, 0.4)
    CHECK(mwu_step(0.5, {8.0, 0.4}) ==
          doctest::Approx(0.31002551887238755737).epsilon(1e-14));
    // naive evaluation agrees away from the overflow regime
    for (double x = 0.05; x < 1.0; x += 0.07) {
        CHECK(mwu_step(x, {25.0, 0.4}) ==
              doctest::Approx(naive_f(x, 25.0, 0.4)).epsilon(1e-13));
    }
}

TEST_CASE("domain errors") {
    const MapParams p{8.0, 0.4};
    CHECK_THROWS_AS(mwu_step(std::nan(""), p), std::domain_error);
    CHECK_THROWS_AS(mwu_step(-0.1, p), std::domain_error);
    CHECK_THROWS_AS(mwu_step(1.1, p), std::domain_error);
}

TEST_CASE("overflow safety at extreme rates") {
    const MapParams p{1e6, 0.5};
    for (double x = 0.0; x <= 1.0; x += 0.001) {
        const double y = mwu_step(x, p);
        CHECK(std::isfinite(y));
        CHECK(y >= 0.0);
        CHECK(y <= 1.0);
    }
}

TEST_CASE("conjugacy f(x,a,b) = 1 - f(1-x,a,1-b)") {
    for (double a : {3.0, 8.0, 25.0}) {
        for (double b : {0.3, 0.4, 0.7}) {
            const MapParams p{a, b};
            const MapParams q{a, 1.0 - b};
            for (int i = 0; i <= 1000; ++i) {
                const double x = double(i) / 1000.0;
                CHECK(std::abs(mwu_step(x, p) - (1.0 - mwu_step(1.0 - x, q))) <=
                      1e-12);
            }
        }
    }
}

TEST_CASE("monotone regime a <= 4") {
    for (double a : {1.0, 3.0, 4.0}) {
        const MapParams p{a, 0.4};
        double prev = mwu_step(0.0, p);
        for (int i = 1; i <= 1000; ++i) {
            const double y = mwu_step(double(i) / 1000.0, p);
            CHECK(y >= prev);
            prev = y;
        }
        CHECK_THROWS_AS(critical_points(a), NoCriticalPoints);
    }
    try {
        critical_points(3.5);
        FAIL("expected NoCriticalPoints");
    } catch (const NoCriticalPoints& e) {
        CHECK(e.rate == 3.5);
    }
}

TEST_CASE("critical point oracles") {
    // mpmath: 1/2 -+ sqrt(1/4 - 1/a)
    const auto c8 = critical_points(8.0);
    CHECK(c8.x_max == doctest::Approx(0.14644660940672623780).epsilon(1e-15));
    CHECK(c8.x_min == doctest::Approx(0.85355339059327376220).epsilon(1e-15));
    const auto c5 = critical_points(5.0);
    CHECK(c5.x_max == doctest::Approx(0.27639320225002103036).epsilon(1e-15));
    CHECK(c5.x_min == doctest::Approx(0.72360679774997896964).epsilon(1e-15));
    // derivative vanishes there
    for (double x : {c8.x_max, c8.x_min}) {
        CHECK(std::abs(mwu_derivative(x, {8.0, 0.4})) <= 1e-12);
    }
}

TEST_CASE("derivative matches finite differences") {
    // h balances truncation against rounding; f''' reaches ~1e9 near the
    // boundary at a = 25, so h = 1e-6 would leave ~1e-4 truncation error.
    const double h = 1e-8;
    for (double a : {3.0, 8.0, 25.0}) {
        for (double b : {0.3, 0.4, 0.7}) {
            const MapParams p{a, b};
            for (int i = 1; i < 1000; ++i) {
                const double x = double(i) / 1000.0;
                const double fd =
                    (mwu_step(x + h, p) - mwu_step(x - h, p)) / (2.0 * h);
                // rounding error in the difference quotient scales with |f'|
                const double d = mwu_derivative(x, p);
                CHECK(std::abs(d - fd) <= 1e-6 * (1.0 + std::abs(d)));
            }
        }
    }
}

TEST_CASE("derivative at b is the closed form, exactly") {
    for (double a : {3.0, 8.0, 25.0, 100.0}) {
        for (double b : {0.3, 0.4, 0.7}) {
            CHECK(mwu_derivative(b, {a, b}) == a * b * b - a * b + 1.0);
        }
    }
}

TEST_CASE("logit/sigmoid round-trip") {
    for (double x = 0.001; x < 1.0; x += 0.013) {
        CHECK(sigmoid(logit(x)) == doctest::Approx(x).epsilon(1e-14));
    }
    CHECK(sigmoid(1000.0) == 1.0);
    CHECK(sigmoid(-1000.0) == doctest::Approx(0.0));
}
