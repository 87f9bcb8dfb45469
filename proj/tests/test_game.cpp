#include <doctest.h>

#include <cmath>
#include <random>

#include "moranlab/game.hpp"

using namespace moranlab;

TEST_CASE("mixed payoffs of a frozen example") {
    // Base game (2,1,3,1) between the mixtures q1 = 1/2 and q2 = 1/4.
    const PayoffMatrix P{2.0, 1.0, 3.0, 1.0};
    const auto M = mixed_payoffs(P, 0.5, 0.25);
    CHECK(M.A == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(M.B == doctest::Approx(1.375).epsilon(1e-15));
    CHECK(M.C == doctest::Approx(1.875).epsilon(1e-15));
    CHECK(M.D == doctest::Approx(1.4375).epsilon(1e-15));
}

TEST_CASE("mixed payoffs agree with the bilinear form") {
    const PayoffMatrix P{2.0, 1.0, 3.0, 1.0};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        const double q1 = u(rng), q2 = u(rng);
        const auto M = mixed_payoffs(P, q1, q2);
        CHECK(M.A == doctest::Approx(mixed_payoff(P, q1, q1)).epsilon(1e-13));
        CHECK(M.B == doctest::Approx(mixed_payoff(P, q1, q2)).epsilon(1e-13));
        CHECK(M.C == doctest::Approx(mixed_payoff(P, q2, q1)).epsilon(1e-13));
        CHECK(M.D == doctest::Approx(mixed_payoff(P, q2, q2)).epsilon(1e-13));
    }
}

TEST_CASE("swapping the mixtures swaps the roles") {
    const PayoffMatrix P{1.3, 0.7, 2.1, 0.9};
    const auto M = mixed_payoffs(P, 0.8, 0.35);
    const auto S = mixed_payoffs(P, 0.35, 0.8);
    CHECK(M.A == S.D);
    CHECK(M.B == S.C);
    CHECK(M.C == S.B);
    CHECK(M.D == S.A);
}

TEST_CASE("effective increments of a frozen example") {
    // alpha = -1, beta = 2, (q1,q2) = (1, 1/2): increments (-1/2, 1/4).
    const auto e = effective_increments({-1.0, 2.0}, 1.0, 0.5);
    CHECK(e.alpha == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(e.beta == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("increment difference identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> q(0.0, 1.0);
    for (int it = 0; it < 500; ++it) {
        const SelectionIncrements s{u(rng), u(rng)};
        const double q1 = q(rng), q2 = q(rng);
        const auto e = effective_increments(s, q1, q2);
        const double dq = q1 - q2;
        CHECK(e.alpha - e.beta ==
              doctest::Approx(dq * dq * (s.alpha - s.beta)).epsilon(1e-12));
    }
}

TEST_CASE("pivot point") {
    CHECK(q_star({-1.0, 2.0}).value() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(q_star({1.0, -1.0}).value() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(q_star({2.0, 2.0}).has_value());
    // The pivot zeroes the averaged increment: q alpha + (1-q) beta = 0.
    const SelectionIncrements s{-1.7, 0.4};
    const double qs = q_star(s).value();
    CHECK(qs * s.alpha + (1.0 - qs) * s.beta == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("payoff validation") {
    CHECK_THROWS(validate_payoffs(PayoffMatrix{1.0, 0.0, 1.0, 1.0}));
    CHECK_THROWS(validate_payoffs(PayoffMatrix{1.0, -2.0, 1.0, 1.0}));
    CHECK_THROWS(mixed_payoffs(PayoffMatrix{}, -0.1, 0.5));
    CHECK_NOTHROW(validate_payoffs(PayoffMatrix{0.5, 1.0, 2.0, 3.0}));
}
