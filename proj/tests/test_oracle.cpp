#include <doctest.h>

#include <cmath>
#include <numbers>

#include "apcasimir/casimir.hpp"
#include "apcasimir/errors.hpp"
#include "apcasimir/oracle.hpp"
#include "test_util.hpp"

using namespace apc;
using testutil::rel_diff;
using testutil::rel_err;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("oracle");

TEST_CASE("thermal oracle reference value and low-T leading term") {
    oracle::OracleControl c;
    CHECK(rel_err(oracle::thermal_oracle({1.0, 1.0}, c), -0.057789254142095749834) < 1e-12);
    // beta large: single-mode Boltzmann suppression
    const double beta = 30.0;
    const double lead = -(1.0 / (kPi * beta * beta * beta)) * std::exp(-beta * kPi) *
                        (beta * kPi + 1.0);
    CHECK(rel_diff(oracle::thermal_oracle({1.0, beta}, c), lead) < 1e-12);
}

TEST_CASE("thermal oracle converges in j_max") {
    oracle::OracleControl c1, c2;
    c1.j_max = 400;
    c2.j_max = 800;
    const double v1 = oracle::thermal_oracle({1.0, 0.5}, c1);
    const double v2 = oracle::thermal_oracle({1.0, 0.5}, c2);
    CHECK(rel_diff(v1, v2) < 1e-12);
}

TEST_CASE("thermal oracle agreement over the xi grid") {
    SumControl ctl;
    for (int i = 0; i < 10; ++i) {
        const double xi = 0.05 * std::pow(5.0 / 0.05, i / 9.0);
        const casimir::Slab s{1.0, 1.0 / (kPi * xi)};
        oracle::OracleControl oc;
        oc.m_max = oc.j_max = std::max<std::int64_t>(400, static_cast<std::int64_t>(1200 * xi));
        CHECK(rel_diff(casimir::thermal_part(s, ctl), oracle::thermal_oracle(s, oc)) < 1e-8);
    }
}

TEST_CASE("thermal oracle cap raises ConvergenceError") {
    oracle::OracleControl c;
    c.m_max = 1;
    CHECK_THROWS_AS(oracle::thermal_oracle({1.0, 0.01}, c), ConvergenceError);
}

TEST_CASE("zero-point cutoff: divergent part") {
    // E(delta) delta^4 -> 3a/(2 pi^2) as delta -> 0
    for (double a : {1.0, 2.0}) {
        const double d = 1e-3 * a;
        const double scaled = oracle::zero_point_cutoff(a, d) * d * d * d * d;
        CHECK(rel_err(scaled, 3.0 * a / (2.0 * kPi * kPi)) < 1e-5);
    }
}

TEST_CASE("regularized cutoff energy approaches the zero-point constant") {
    const double e0 = casimir::zero_point_antiperiodic(1.0);
    CHECK(std::abs(oracle::zero_point_regularized(1.0, 0.005) - e0) < 1e-4);
    // O(delta^2) approach
    const double d1 = std::abs(oracle::zero_point_regularized(1.0, 0.02) - e0);
    const double d2 = std::abs(oracle::zero_point_regularized(1.0, 0.01) - e0);
    CHECK(d1 / d2 > 3.5);
    CHECK(d1 / d2 < 4.5);
}

TEST_CASE("zero-point oracle ladder") {
    oracle::OracleControl c;
    const double e0 = casimir::zero_point_antiperiodic(1.0);
    const double zp = oracle::zero_point_oracle(1.0, c);
    CHECK(std::abs(zp - e0) < 1e-6);
    // a = 2 scales as 1/8: |oracle(a) - 7 pi^2/(720 a^3)| <= 1e-6/a^3
    const double zp2 = oracle::zero_point_oracle(2.0, c);
    CHECK(std::abs(zp2 - e0 / 8.0) < 1e-6 / 8.0);
}

TEST_CASE("ladder convergence order is ~2") {
    const double r0 = oracle::zero_point_regularized(1.0, 0.04);
    const double r1 = oracle::zero_point_regularized(1.0, 0.02);
    const double r2 = oracle::zero_point_regularized(1.0, 0.01);
    const double order = std::log2((r1 - r0) / (r2 - r1));
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("oracle control validation") {
    oracle::OracleControl c;
    c.m_max = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.m_max = 10;
    c.delta = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    oracle::OracleControl big;
    big.delta = 0.3; // not << a
    CHECK_THROWS_AS(oracle::zero_point_oracle(1.0, big), DomainError);
    CHECK_THROWS_AS(oracle::zero_point_oracle(-1.0, oracle::OracleControl{}), DomainError);
}

TEST_SUITE_END();
