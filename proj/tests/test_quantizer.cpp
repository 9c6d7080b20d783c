#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "qcrb/noise.hpp"
#include "qcrb/quantizer.hpp"

using namespace qcrb;

TEST_CASE("make_quantizer validates breakpoints") {
    const QuantizerSpec q = make_quantizer({-1.0, 0.5, 2.0}, "demo");
    CHECK(q.interval_count() == 4);
    CHECK(q.label == "demo");
    CHECK(make_quantizer({}, "trivial").interval_count() == 1);  // A=1 is legal
    CHECK_THROWS_AS(make_quantizer({0.0, 0.0}, "dup"), std::invalid_argument);
    CHECK_THROWS_AS(make_quantizer({1.0, -1.0}, "order"), std::invalid_argument);
    CHECK_THROWS_AS(make_quantizer({0.0, std::numeric_limits<double>::quiet_NaN()}, "nan"),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_quantizer({0.0, kInf}, "inf"), std::invalid_argument);
}

TEST_CASE("make_binary is a single threshold") {
    const QuantizerSpec q = make_binary(0.75);
    CHECK(q.breakpoints.size() == 1);
    CHECK(q.breakpoints[0] == 0.75);
    CHECK(q.interval_count() == 2);
    CHECK_THROWS_AS(make_binary(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("lloyd_max_4bit table") {
    const QuantizerSpec q = lloyd_max_4bit(1.0);
    REQUIRE(q.breakpoints.size() == 15);
    CHECK(q.interval_count() == 16);
    CHECK(q.breakpoints[7] == 0.0);  // middle riser is exactly zero
    CHECK(q.breakpoints[0] == doctest::Approx(-2.401).epsilon(1e-12));
    CHECK(q.breakpoints[14] == doctest::Approx(2.401).epsilon(1e-12));
    // odd symmetry of the table
    for (int i = 0; i < 7; ++i) CHECK(q.breakpoints[i] == -q.breakpoints[14 - i]);
    // scaling multiplies every riser
    const QuantizerSpec q3 = lloyd_max_4bit(3.0);
    for (std::size_t i = 0; i < q.breakpoints.size(); ++i)
        CHECK(q3.breakpoints[i] == doctest::Approx(3.0 * q.breakpoints[i]).epsilon(1e-15));
    CHECK_THROWS_AS(lloyd_max_4bit(0.0), std::domain_error);
    CHECK_THROWS_AS(lloyd_max_4bit(-2.0), std::domain_error);
}

TEST_CASE("split_interval inserts one riser, 1-based cells") {
    const QuantizerSpec q = make_quantizer({-1.0, 1.0}, "pair");
    SUBCASE("split the leftmost unbounded cell") {
        const QuantizerSpec r = split_interval(q, 1, -3.0);
        REQUIRE(r.breakpoints.size() == 3);
        CHECK(r.breakpoints[0] == -3.0);
        CHECK(r.breakpoints[1] == -1.0);
    }
    SUBCASE("split the middle cell") {
        const QuantizerSpec r = split_interval(q, 2, 0.25);
        REQUIRE(r.breakpoints.size() == 3);
        CHECK(r.breakpoints[1] == 0.25);
    }
    SUBCASE("split the rightmost cell") {
        const QuantizerSpec r = split_interval(q, 3, 5.0);
        CHECK(r.breakpoints[2] == 5.0);
    }
    SUBCASE("rejects a point outside the chosen cell or on its edge") {
        CHECK_THROWS_AS(split_interval(q, 2, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(split_interval(q, 2, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(split_interval(q, 1, 0.0), std::invalid_argument);
    }
    SUBCASE("rejects out-of-range cell index") {
        CHECK_THROWS_AS(split_interval(q, 0, 0.0), std::out_of_range);
        CHECK_THROWS_AS(split_interval(q, 4, 0.0), std::out_of_range);
    }
    SUBCASE("repeated splits of the zero threshold accumulate a superset") {
        QuantizerSpec b = make_binary(0.0);
        b = split_interval(b, 2, 1.0);
        b = split_interval(b, 3, 2.0);
        b = split_interval(b, 1, -1.0);
        b = split_interval(b, 1, -2.0);
        CHECK(b.interval_count() == 6);
        const std::vector<double> want{-2.0, -1.0, 0.0, 1.0, 2.0};
        CHECK(b.breakpoints == want);
    }
}

TEST_CASE("refine_uniform_probability: equal masses and exact nesting") {
    const NoiseModel normal = NoiseModel::standard_normal();
    const QuantizerSpec q4 = refine_uniform_probability(normal, 4);
    REQUIRE(q4.breakpoints.size() == 3);
    CHECK(q4.breakpoints[0] == doctest::Approx(-0.6744897502).epsilon(1e-9));
    CHECK(q4.breakpoints[1] == 0.0);
    CHECK(q4.breakpoints[2] == doctest::Approx(0.6744897502).epsilon(1e-9));

    const QuantizerSpec q8 = refine_uniform_probability(normal, 8);
    REQUIRE(q8.breakpoints.size() == 7);
    CHECK(q8.label == "equiprobable-8");
    CHECK(q8.breakpoints[3] == 0.0);  // quantile(1/2) is exact
    // every cell has mass 1/8
    double prev = -kInf;
    for (double b : q8.breakpoints) {
        CHECK(normal.cdf(b) - normal.cdf(prev) == doctest::Approx(0.125).epsilon(1e-10));
        prev = b;
    }
    CHECK(1.0 - normal.cdf(prev) == doctest::Approx(0.125).epsilon(1e-10));
    SUBCASE("doubling the cell count keeps every old riser bit-for-bit") {
        const QuantizerSpec q16 = refine_uniform_probability(normal, 16);
        for (double b : q8.breakpoints)
            CHECK(std::find(q16.breakpoints.begin(), q16.breakpoints.end(), b) !=
                  q16.breakpoints.end());
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(refine_uniform_probability(normal, 1), std::domain_error);
        CHECK_THROWS_AS(refine_uniform_probability(normal, 0), std::domain_error);
    }
}

TEST_CASE("shifted and scaled transforms") {
    const QuantizerSpec q = make_quantizer({-1.0, 0.0, 2.0}, "base");
    const QuantizerSpec s = shifted(q, 0.5);
    CHECK(s.breakpoints[0] == -0.5);
    CHECK(s.breakpoints[1] == 0.5);
    CHECK(s.breakpoints[2] == 2.5);
    const QuantizerSpec c = scaled(q, 2.0);
    CHECK(c.breakpoints[0] == -2.0);
    CHECK(c.breakpoints[2] == 4.0);
    CHECK_THROWS_AS(scaled(q, 0.0), std::domain_error);
    CHECK_THROWS_AS(scaled(q, -1.0), std::domain_error);
}

TEST_CASE("interval_index agrees with a linear scan") {
    oracles::SplitMix64 rng(0xfeedULL);
    for (int trial = 0; trial < 200; ++trial) {
        const QuantizerSpec q = make_quantizer(
            oracles::random_breakpoints(rng, 1 + int(rng.next() % 9), -4.0, 4.0), "rnd");
        for (int j = 0; j < 50; ++j) {
            const double x = -4.0 + 8.0 * rng.uniform();
            int expect = 1;  // cell k covers [t_{k-1}, t_k)
            for (double b : q.breakpoints)
                if (b <= x) ++expect;
            CHECK(interval_index(q, x) == expect);
        }
    }
    const QuantizerSpec q = make_quantizer({-1.0, 1.0}, "pair");
    CHECK(interval_index(q, -1.0) == 2);  // breakpoints belong to the right cell
    CHECK(interval_index(q, 1.0) == 3);
    CHECK(interval_index(q, 0.999999) == 2);
    CHECK(interval_index(q, -kInf) == 1);
    CHECK(interval_index(q, kInf) == 3);
    CHECK_THROWS_AS(interval_index(q, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("interval_bounds covers the real line") {
    const QuantizerSpec q = make_quantizer({-1.0, 0.5, 2.0}, "demo");
    auto [l1, u1] = interval_bounds(q, 1);
    CHECK(l1 == -kInf);
    CHECK(u1 == -1.0);
    auto [l4, u4] = interval_bounds(q, 4);
    CHECK(l4 == 2.0);
    CHECK(u4 == kInf);
    auto [l2, u2] = interval_bounds(q, 2);
    CHECK(l2 == -1.0);
    CHECK(u2 == 0.5);
    CHECK_THROWS_AS(interval_bounds(q, 0), std::out_of_range);
    CHECK_THROWS_AS(interval_bounds(q, 5), std::out_of_range);
}

TEST_CASE("dac_decode: interior midpoints, clamped half-cell edges") {
    const QuantizerSpec q = make_quantizer({-1.0, 0.0, 2.0}, "demo");
    CHECK(dac_decode(q, -0.3) == -0.5);  // cell [-1, 0) -> midpoint
    CHECK(dac_decode(q, 1.7) == 1.0);    // cell [0, 2)  -> midpoint
    CHECK(dac_decode(q, -9.0) == -1.5);  // left tail: -1 minus half the first finite width
    CHECK(dac_decode(q, 50.0) == 3.0);   // right tail: 2 plus half the last finite width
    CHECK(dac_decode(q, 2.0) == 3.0);    // breakpoint itself lands in the right cell
    const QuantizerSpec b = make_binary(0.0);
    CHECK_THROWS_AS(dac_decode(b, 0.4), std::invalid_argument);  // no finite width to extrapolate
}

TEST_CASE("serialization round trip is bit exact") {
    oracles::SplitMix64 rng(0x5e11aULL);
    for (int trial = 0; trial < 100; ++trial) {
        QuantizerSpec q = make_quantizer(
            oracles::random_breakpoints(rng, 1 + int(rng.next() % 14), -4.0, 4.0), "rt");
        // exercise awkward magnitudes (shift stays small enough that the
        // coarser ulp spacing cannot merge neighboring breakpoints)
        if (trial % 3 == 0) q = scaled(q, 1e-7);
        if (trial % 5 == 0) q = shifted(q, -1e3);
        const QuantizerSpec back = quantizer_from_text(to_text(q));
        CHECK(back.label == q.label);
        REQUIRE(back.breakpoints.size() == q.breakpoints.size());
        for (std::size_t i = 0; i < q.breakpoints.size(); ++i)
            CHECK(back.breakpoints[i] == q.breakpoints[i]);
    }
    const QuantizerSpec named = make_quantizer({-0.1, 0.3}, "my quantizer");
    CHECK(quantizer_from_text(to_text(named)).label == "my quantizer");
    CHECK(to_text(make_binary(0.5)).substr(0, 7) == "binary:");

    SUBCASE("parser rejects malformed text") {
        CHECK_THROWS_AS(quantizer_from_text("nolabel"), std::invalid_argument);
        CHECK_THROWS_AS(quantizer_from_text("lbl:1,junk"), std::invalid_argument);
        CHECK_THROWS_AS(quantizer_from_text("lbl:2,1"), std::invalid_argument);
        CHECK(quantizer_from_text("lbl:").interval_count() == 1);  // trivial quantizer
    }
    SUBCASE("labels with a colon or newline cannot be serialized") {
        CHECK_THROWS_AS(to_text(make_quantizer({0.0}, "a:b")), std::invalid_argument);
        CHECK_THROWS_AS(to_text(make_quantizer({0.0}, "a\nb")), std::invalid_argument);
    }
}

TEST_CASE("threshold sequences") {
    const ThresholdSequence t = ThresholdSequence::constant(5, 0.25);
    REQUIRE(t.size() == 5);
    for (double h : t.h) CHECK(h == 0.25);
    CHECK(ThresholdSequence::constant(0, 0.0).size() == 0);
    CHECK_THROWS_AS(ThresholdSequence::constant(-1, 0.0), std::invalid_argument);
}
