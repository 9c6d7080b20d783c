#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "qcrb/analysis.hpp"
#include "qcrb/fim.hpp"

using namespace qcrb;

namespace {
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kSqrtTwoOverPi = 0.79788456080286535588;
}  // namespace

TEST_CASE("convergence_study: normal noise climbs from 2/pi toward 1") {
    const NoiseModel normal = NoiseModel::standard_normal();
    std::vector<int> depths(16);
    std::iota(depths.begin(), depths.end(), 1);
    const std::vector<ConvergencePoint> pts = convergence_study(normal, depths, 0.0);
    REQUIRE(pts.size() == 16);
    CHECK(pts.front().intervals == 2);
    CHECK(pts.back().intervals == 65536);
    CHECK(pts.front().rho == doctest::Approx(kTwoOverPi).epsilon(1e-10));
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].rho >= pts[i - 1].rho);
    CHECK(pts.back().rho >= 0.9999);
    for (const ConvergencePoint& p : pts) CHECK(p.rho <= 1.0 + 1e-8);
    CHECK(pts.back().rho == doctest::Approx(0.9999985194428139).epsilon(1e-9));
}

TEST_CASE("convergence_study: Laplace saturates at rho0 = 2 immediately") {
    // every equiprobable partition has a breakpoint at the median 0, and on
    // either side of the kink the cell terms telescope to 1/scale^2 exactly,
    // so the whole sequence sits at 2 up to rounding
    const NoiseModel lap = NoiseModel::laplace_unit_variance();
    const std::vector<ConvergencePoint> pts = convergence_study(lap, {1, 2, 5, 10, 16}, 0.0);
    REQUIRE(pts.size() == 5);
    for (const ConvergencePoint& p : pts) CHECK(p.rho == doctest::Approx(2.0).epsilon(1e-9));
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].rho >= pts[i - 1].rho - 1e-9);
    CHECK(std::abs(pts.back().rho - 2.0) <= 1e-3);
}

TEST_CASE("convergence_study: evaluation point shifts the partition") {
    const NoiseModel normal = NoiseModel::standard_normal();
    // at any s the shifted equiprobable grid sees the same geometry, so the
    // rho sequence is identical to the s=0 one
    const std::vector<ConvergencePoint> at0 = convergence_study(normal, {1, 4, 8}, 0.0);
    const std::vector<ConvergencePoint> at2 = convergence_study(normal, {1, 4, 8}, 2.0);
    for (std::size_t i = 0; i < at0.size(); ++i)
        CHECK(at2[i].rho == doctest::Approx(at0[i].rho).epsilon(1e-12));
}

TEST_CASE("convergence_study: argument validation") {
    const NoiseModel normal = NoiseModel::standard_normal();
    CHECK_THROWS_AS(convergence_study(normal, {0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(convergence_study(normal, {21}, 0.0), std::domain_error);
    CHECK_THROWS_AS(convergence_study(normal, {2, 2}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(normal, {3, 1}, 0.0), std::invalid_argument);
}

TEST_CASE("convergence_to_csv layout") {
    const std::vector<ConvergencePoint> pts{{2, 0.5}, {4, 0.75}};
    const std::string csv = convergence_to_csv(pts);
    CHECK(csv.substr(0, 6) == "A,rho\n");
    CHECK(csv.find("\n2,0.5\n") != std::string::npos);
    CHECK(csv.find("\n4,0.75\n") != std::string::npos);
}

TEST_CASE("binary_bound_f: nonnegative with zeros at 0 and infinity") {
    CHECK(binary_bound_f(0.0) == 0.0);
    // independent identity: 4*Phi(s)*Phi(-s) = 1 - erf(s/sqrt(2))^2
    for (double s = -6.0; s <= 6.0; s += 0.37) {
        const double e = std::erf(s * 0.70710678118654752440);
        CHECK(binary_bound_f(s) ==
              doctest::Approx(1.0 - e * e - std::exp(-s * s)).epsilon(1e-13));
    }
    CHECK(binary_bound_f(3.0) == binary_bound_f(-3.0));  // even

    const GridMinimum gm = check_f_nonnegative(-10.0, 10.0, 1e-3);
    CHECK(gm.min_value >= -1e-12);
    CHECK(gm.min_value <= 1e-22);  // f(+-10) ~ 3e-23 caps the minimum
    CHECK_THROWS_AS(check_f_nonnegative(-1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(check_f_nonnegative(-1.0, 1.0, -0.1), std::domain_error);
}

TEST_CASE("binary_bound_g: odd, extremum at sqrt(1 - 2/pi), tail limits") {
    const double s2 = std::sqrt(1.0 - kTwoOverPi);
    CHECK(binary_bound_g(0.0) == 0.0);
    for (double s : {0.2, 0.7, 1.9}) CHECK(binary_bound_g(-s) == -binary_bound_g(s));
    // g' flips from + to - across s2, so s2 is the maximum of g
    CHECK(binary_bound_g(s2) > binary_bound_g(s2 - 0.05));
    CHECK(binary_bound_g(s2) > binary_bound_g(s2 + 0.05));
    CHECK(binary_bound_g(s2) > 0.0);
    // g itself starts positive after 0 and has turned negative by s = 2
    CHECK(binary_bound_g(0.3) > 0.0);
    CHECK(binary_bound_g(2.0) < 0.0);
    CHECK(binary_bound_g(30.0) == doctest::Approx(-kSqrtTwoOverPi).epsilon(1e-13));
    CHECK(binary_bound_g(-30.0) == doctest::Approx(kSqrtTwoOverPi).epsilon(1e-13));

    SUBCASE("f'(s) = 2 exp(-s^2/2) g(s) against central differences") {
        const double h = 1e-5;
        for (double s : {0.25, 0.8, 1.5, -1.1}) {
            const double fd = (binary_bound_f(s + h) - binary_bound_f(s - h)) / (2 * h);
            const double analytic = 2.0 * std::exp(-0.5 * s * s) * binary_bound_g(s);
            CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
        }
    }
}

TEST_CASE("rho_interval_search: one bit stays at the median") {
    const NoiseModel normal = NoiseModel::standard_normal();
    const SearchResult res = rho_interval_search(normal, 1, 0.0, 30, 7);
    REQUIRE(res.spec.breakpoints.size() == 1);
    CHECK(std::abs(res.spec.breakpoints[0]) <= 1e-6);
    CHECK(res.rho == doctest::Approx(kTwoOverPi).epsilon(1e-9));
}

TEST_CASE("rho_interval_search: 3- and 4-bit optima match the known levels") {
    const NoiseModel normal = NoiseModel::standard_normal();
    const SearchResult b3 = rho_interval_search(normal, 3, 0.0, 40, 1);
    CHECK(b3.rho >= 0.965);
    CHECK(b3.rho <= 0.975);
    const SearchResult b4 = rho_interval_search(normal, 4, 0.0, 40, 1);
    CHECK(b4.rho >= 0.985);
    CHECK(b4.rho <= 0.995);
    CHECK(b4.rho <= 1.0 + 1e-8);
    // the search result is itself a valid quantizer whose rho reproduces
    CHECK(rho_general(b4.spec, 0.0, normal) == doctest::Approx(b4.rho).epsilon(1e-14));
    // beats the equiprobable initializer
    CHECK(b3.rho >=
          rho_general(refine_uniform_probability(normal, 8), 0.0, normal) - 1e-12);
}

TEST_CASE("rho_interval_search: deterministic under a fixed seed") {
    const NoiseModel normal = NoiseModel::standard_normal();
    const SearchResult a = rho_interval_search(normal, 2, 0.3, 25, 42);
    const SearchResult b = rho_interval_search(normal, 2, 0.3, 25, 42);
    CHECK(a.rho == b.rho);
    CHECK(to_text(a.spec) == to_text(b.spec));
    const SearchResult c = rho_interval_search(normal, 2, 0.3, 25, 43);
    CHECK(c.rho <= 1.0 + 1e-8);  // different seed still respects the cap
}

TEST_CASE("rho_interval_search: argument validation") {
    const NoiseModel normal = NoiseModel::standard_normal();
    CHECK_THROWS_AS(rho_interval_search(normal, 0, 0.0, 5, 1), std::domain_error);
    CHECK_THROWS_AS(rho_interval_search(normal, 9, 0.0, 5, 1), std::domain_error);
    CHECK_THROWS_AS(rho_interval_search(normal, 3, 0.0, 0, 1), std::domain_error);
}

TEST_CASE("laplace_counterexample_search finds and re-verifies a witness") {
    const CounterexampleWitness w = laplace_counterexample_search(1, 100000);
    const NoiseModel normal = NoiseModel::standard_normal();
    const NoiseModel lap = NoiseModel::laplace_unit_variance();
    const double rn = rho_general(w.spec, w.s, normal);
    const double rl = rho_general(w.spec, w.s, lap);
    CHECK(rn == doctest::Approx(w.rho_normal).epsilon(1e-14));
    CHECK(rl == doctest::Approx(w.rho_laplace).epsilon(1e-14));
    CHECK(rl < rn - 1e-9);
    // the unquantized comparison goes the other way: rho0 2 vs 1
    CHECK(lap.rho0() > normal.rho0() + 0.5);

    SUBCASE("deterministic given the seed") {
        const CounterexampleWitness w2 = laplace_counterexample_search(1, 100000);
        CHECK(w2.s == w.s);
        CHECK(to_text(w2.spec) == to_text(w.spec));
    }
    SUBCASE("budget exhaustion reports rather than fabricates") {
        // seed 2's first draw is not a witness (pinned by running the search)
        CHECK_THROWS_AS(laplace_counterexample_search(3, 1), std::runtime_error);
    }
}
