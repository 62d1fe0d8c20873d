#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "telefid/network.hpp"

using namespace telefid;

namespace {
const double kGolden = (std::sqrt(5.0) - 1) / 2;
}

TEST_CASE("resource curves") {
    const double r = 0.6 / 0.68;
    CHECK(rc_strategy1(1, 0.8) == doctest::Approx(1 - std::sqrt(1 - r * r)).epsilon(1e-12));
    CHECK(rc_strategy1(1, 0.8) == doctest::Approx(0.5294).epsilon(1e-4));
    CHECK(rc_strategy2(1, 0.8) == doctest::Approx(0.1482).epsilon(1e-3));
    CHECK(rc_strategy2(1, 0.8) == doctest::Approx(1 - std::sqrt(1 - std::pow(2.2 / 4.2, 2))).epsilon(1e-12));
    CHECK(rc_strategy1(7, 0.5) == doctest::Approx(0));
    for (int N : {1, 2, 5, 30}) CHECK(rc_strategy2(N, kGolden) == doctest::Approx(0));
    CHECK(rc_strategy2(3, 0.5) == 0);
    CHECK(rc_strategy1_limit(0.8) == doctest::Approx(-0.5 * std::log(1 - r * r)));

    double prev1 = 0, inc = 1e9, prev2 = rc_strategy2(1, 0.8);
    for (int N = 1; N <= 64; ++N) {
        const double a = rc_strategy1(N, 0.8), b = rc_strategy2(N, 0.8);
        CHECK(a > prev1);
        CHECK(a - prev1 < inc);
        inc = a - prev1;
        prev1 = a;
        if (N >= 2) CHECK(b < prev2);
        prev2 = b;
        for (double p : {0.1, 0.3, 0.7, 0.95}) {
            CHECK(rc_strategy1(N, p) >= 0);
            CHECK(rc_strategy1(N, p) <= N);
            CHECK(rc_strategy2(N, p) >= 0);
            CHECK(rc_strategy2(N, p) <= N);
        }
    }
    CHECK(std::abs(rc_strategy1(64, 0.8) - rc_strategy1_limit(0.8)) < 0.02 * rc_strategy1_limit(0.8));
    CHECK(rc_strategy2(64, 0.8) < 0.01);
    CHECK_THROWS_AS(rc_strategy1(0, 0.8), DomainError);
    CHECK_THROWS_AS(rc_strategy2(2, 1.0), DomainError);
}

TEST_CASE("swap chain condition") {
    for (int N : {1, 3})
        for (double p : {0.5, 0.6, 0.62, 0.7, 0.9}) CHECK(swap_chain_condition(N, p, 0.5) == (p >= kGolden));
    CHECK(swap_chain_condition(1, 0.8, 0.7));
    CHECK_FALSE(swap_chain_condition(1, 0.8, 0.8));
    for (int N : {1, 2, 4})
        for (double b : {0.5, 0.6, 0.9}) CHECK_FALSE(swap_chain_condition(N, 1e-3, b));
    CHECK_THROWS_AS(swap_chain_condition(1, 0.8, 0.4), DomainError);
}

TEST_CASE("single segment is the three-party protocol") {
    for (double b : {0.5, 0.55, 0.8}) {
        const NetworkConfig cfg{1, 0.8, b};
        const double want = bob_pvm_protocol(adc_choi(0.8), pure(b), bell_basis()).average_fef;
        CHECK(network_simulate(cfg, Strategy::II).average_fef == want);
        CHECK(network_simulate(cfg, Strategy::II, ContractionOrder::right_to_left).average_fef ==
              doctest::Approx(want).epsilon(1e-12));
        CHECK(network_simulate(cfg, Strategy::I).average_fef == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("contraction order") {
    for (int N = 2; N <= 4; ++N)
        for (double b : {0.55, 0.7}) {
            const NetworkConfig cfg{N, 0.8, b};
            const ProtocolReport l = network_simulate(cfg, Strategy::II);
            const ProtocolReport r = network_simulate(cfg, Strategy::II, ContractionOrder::right_to_left);
            CHECK(l.average_fef == doctest::Approx(r.average_fef).epsilon(1e-9));
            CHECK(l.p_succ == doctest::Approx(1).epsilon(1e-9));
            CHECK(l.average_fef >= 0.5 - 1e-10);
        }
}

TEST_CASE("inside the swap condition both strategies keep the optimum") {
    const double p = 0.8, b0 = 0.55;
    for (int N = 1; N <= 4; ++N) {
        REQUIRE(swap_chain_condition(N, p, b0));
        const double beta = strategy1_beta(N, b0);
        const AppendixB ab = appendixB_protocol2(0.5, beta, 0.5, p);
        const NetworkConfig cfg{N, p, b0};
        CHECK(network_simulate(cfg, Strategy::I).average_fef == doctest::Approx(ab.value).epsilon(1e-8));
        CHECK(network_simulate(cfg, Strategy::II).average_fef == doctest::Approx((1 + p) / (4 * p)).epsilon(1e-8));
        CHECK(ab.value == doctest::Approx((1 + p) / (4 * p)).epsilon(1e-8));
    }
    CHECK(strategy1_beta(1, 0.55) == doctest::Approx(0.55));
    CHECK(strategy1_beta(3, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("nearly perfect chain") {
    for (int N = 1; N <= 4; ++N) CHECK(network_simulate({N, 1e-3, 0.5}, Strategy::II).average_fef >= 0.99);
}

TEST_CASE("limits") {
    CHECK_THROWS_AS(network_simulate({kMaxNetworkSegments + 1, 0.8, 0.5}, Strategy::II), DomainError);
    CHECK_THROWS_AS(network_simulate({0, 0.8, 0.5}, Strategy::II), DomainError);
    CHECK_THROWS_AS(network_simulate({2, 0.8, 1.0}, Strategy::I), DomainError);
    CHECK_NOTHROW(network_simulate({kMaxNetworkSegments, 0.8, 0.6}, Strategy::II));
}
