#include <doctest.h>

#include <cmath>
#include <random>

#include "moranlab/moran.hpp"
#include "support/oracles.hpp"

using namespace moranlab;

TEST_CASE("fitness at N = 2 sees only the opponent") {
    const MoranProcess p{2, {2.0, 1.0, 3.0, 1.0}, UpdateRule::DeathBirth};
    CHECK(fitness_a(p, 1) == 1.0);  // the lone I plays the lone II: payoff B
    CHECK(fitness_b(p, 1) == 3.0);  // the lone II plays the lone I: payoff C
}

TEST_CASE("death/birth at N = 2 is payoff-blind") {
    // With one of each type, the dying slot leaves a single candidate parent.
    const MoranProcess p{2, {2.0, 1.0, 3.0, 1.0}, UpdateRule::DeathBirth};
    const auto t = transition_coefficients(p, 1);
    CHECK(t.up == 0.5);
    CHECK(t.down == 0.5);
    CHECK(t.stay == 0.0);
}

TEST_CASE("neutral chain transitions") {
    const MoranProcess p{3, {1.0, 1.0, 1.0, 1.0}, UpdateRule::DeathBirth};
    for (int n : {1, 2}) {
        const auto t = transition_coefficients(p, n);
        CHECK(t.up == doctest::Approx(t.down).epsilon(1e-15));
        CHECK(t.up == doctest::Approx(n == 1 ? 1.0 / 3.0 : 1.0 / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("absorbing states") {
    const MoranProcess p{10, {2.0, 1.0, 3.0, 1.0}, UpdateRule::DeathBirth};
    for (int n : {0, 10}) {
        const auto t = transition_coefficients(p, n);
        CHECK(t.up == 0.0);
        CHECK(t.stay == 1.0);
        CHECK(t.down == 0.0);
    }
}

TEST_CASE("direct and factored coefficients agree") {
    const MoranProcess base{20, {2.0, 1.0, 3.0, 1.0}, UpdateRule::DeathBirth};
    for (int n = 0; n <= base.N; ++n) {
        const auto d = transition_coefficients(base, n);
        const auto f = transition_coefficients_factored(base, n);
        CHECK(d.up == doctest::Approx(f.up).epsilon(1e-14));
        CHECK(d.down == doctest::Approx(f.down).epsilon(1e-14));
    }
    oracles::RandomProcesses gen(101);
    for (int it = 0; it < 200; ++it) {
        auto p = gen.next(2, 40);
        if (it % 2 == 1) p.rule = UpdateRule::BirthDeath;
        for (int n = 0; n <= p.N; ++n) {
            const auto d = transition_coefficients(p, n);
            const auto f = transition_coefficients_factored(p, n);
            CHECK(d.up == doctest::Approx(f.up).epsilon(1e-12));
            CHECK(d.down == doctest::Approx(f.down).epsilon(1e-12));
        }
    }
}

TEST_CASE("columns are stochastic and nonnegative") {
    oracles::RandomProcesses gen(202);
    for (int it = 0; it < 1000; ++it) {
        auto p = gen.next(2, 40);
        if (it % 3 == 0) p.rule = UpdateRule::BirthDeath;
        const auto M = build_matrix(p);
        for (int j = 0; j <= p.N; ++j) {
            double col = 0.0;
            for (int i = 0; i <= p.N; ++i) {
                CHECK(M.at(i, j) >= 0.0);
                col += M.at(i, j);
            }
            CHECK(std::abs(col - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("boundary columns are exact point masses") {
    const MoranProcess p{12, {0.5, 2.5, 1.5, 0.75}, UpdateRule::DeathBirth};
    const auto M = build_matrix(p);
    CHECK(M.at(0, 0) == 1.0);
    CHECK(M.at(12, 12) == 1.0);
    for (int i = 1; i <= 12; ++i) CHECK(M.at(i, 0) == 0.0);
    for (int i = 0; i < 12; ++i) CHECK(M.at(i, 12) == 0.0);
}

TEST_CASE("fixation frozen examples") {
    // Death/birth with N = 2 fixes with probability 1/2 for any payoffs.
    for (double r : {0.5, 1.0, 2.0, 7.5}) {
        const auto F = fixation_closed_form(2, r, UpdateRule::DeathBirth);
        CHECK(F[1] == doctest::Approx(0.5).epsilon(1e-14));
    }
    // N = 3, r = 2 death/birth: F_1 = 2/9.
    const auto F3 = fixation_closed_form(3, 2.0, UpdateRule::DeathBirth);
    CHECK(F3[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
    // Birth/death, N = 2, r = 2: F_1 = 1/3.
    const auto B2 = fixation_closed_form(2, 2.0, UpdateRule::BirthDeath);
    CHECK(B2[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("closed form endpoints and monotonicity") {
    for (auto rule : {UpdateRule::DeathBirth, UpdateRule::BirthDeath}) {
        for (double r : {0.2, 0.9, 1.0, 1.1, 5.0, 50.0}) {
            const auto F = fixation_closed_form(25, r, rule);
            CHECK(F[0] == 0.0);
            CHECK(F[25] == doctest::Approx(1.0).epsilon(1e-12));
            // Strictly increasing except where extreme r saturates to 1.0.
            for (int n = 0; n < 25; ++n) {
                CHECK(F[n + 1] >= F[n]);
                if (F[n + 1] < 1.0 - 1e-12) CHECK(F[n + 1] > F[n]);
            }
        }
    }
}

TEST_CASE("recursion matches closed form for constant selection") {
    for (auto rule : {UpdateRule::DeathBirth, UpdateRule::BirthDeath}) {
        for (double r : {0.5, 1.0, 1.5, 3.0}) {
            // Frequency-independent game: mutant payoff 1, resident r.
            const MoranProcess p{20, {1.0, 1.0, r, r}, rule};
            const auto rec = fixation_recursive(p);
            const auto closed = fixation_closed_form(p);
            for (int n = 0; n <= 20; ++n) {
                CHECK(rec[n] == doctest::Approx(closed[n]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("neutral fixation is exactly n over N") {
    const MoranProcess p{17, {1.0, 1.0, 1.0, 1.0}, UpdateRule::DeathBirth};
    const auto F = fixation_recursive(p);
    for (int n = 0; n <= 17; ++n) CHECK(F[n] == n / 17.0);
}

TEST_CASE("three fixation routes agree on random games") {
    oracles::RandomProcesses gen(303);
    for (int it = 0; it < 25; ++it) {
        auto p = gen.next(3, 30);
        if (it % 2 == 1) p.rule = UpdateRule::BirthDeath;
        const auto rec = fixation_recursive(p);
        const auto solve = oracles::fixation_by_solve(p);
        const auto lim = power_limit(p);
        for (int n = 0; n <= p.N; ++n) {
            CHECK(rec[n] == doctest::Approx(solve[n]).epsilon(1e-10));
            CHECK(lim.limit.at(p.N, n) == doctest::Approx(solve[n]).epsilon(1e-10));
            CHECK(lim.limit.at(0, n) == doctest::Approx(1.0 - solve[n]).epsilon(1e-10));
        }
    }
}

TEST_CASE("power limit columns collapse onto the boundary") {
    const MoranProcess p{15, {2.0, 1.0, 3.0, 1.0}, UpdateRule::DeathBirth};
    const auto lim = power_limit(p);
    for (int j = 0; j <= 15; ++j) {
        for (int i = 1; i < 15; ++i) CHECK(std::abs(lim.limit.at(i, j)) < 1e-13);
        CHECK(lim.limit.at(0, j) + lim.limit.at(15, j) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("matrix power equals repeated evolve") {
    const MoranProcess p{9, {1.2, 0.8, 0.6, 1.7}, UpdateRule::DeathBirth};
    const auto M5 = matrix_power(p, 5);
    for (int j = 0; j <= 9; ++j) {
        std::vector<double> e(static_cast<std::size_t>(10), 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        const auto Pj = evolve(p, e, 5);
        for (int i = 0; i <= 9; ++i) {
            CHECK(M5.at(i, j) == doctest::Approx(Pj[static_cast<std::size_t>(i)]).epsilon(1e-14));
        }
    }
}

TEST_CASE("evolve conserves total mass and the fixation functional") {
    const MoranProcess p{20, {2.0, 1.0, 3.0, 1.0}, UpdateRule::DeathBirth};
    const auto F = fixation_recursive(p);
    std::vector<double> P(21, 1.0 / 21.0);
    const double i0 = inner(P, F);
    auto Q = evolve(p, P, 2000);
    double mass = 0.0;
    for (double v : Q) mass += v;
    CHECK(std::abs(mass - 1.0) < 1e-12);
    CHECK(std::abs(inner(Q, F) - i0) < 1e-12);
}

TEST_CASE("fixation probabilities increase with selection strength") {
    // Raising every I payoff cannot hurt the invader.
    const MoranProcess weak{15, {1.1, 1.1, 1.0, 1.0}, UpdateRule::DeathBirth};
    const MoranProcess strong{15, {1.6, 1.6, 1.0, 1.0}, UpdateRule::DeathBirth};
    const auto Fw = fixation_recursive(weak);
    const auto Fs = fixation_recursive(strong);
    for (int n = 1; n < 15; ++n) CHECK(Fs[n] > Fw[n]);
}

TEST_CASE("closed form requires frequency independence") {
    const MoranProcess p{10, {2.0, 1.0, 3.0, 1.0}, UpdateRule::DeathBirth};
    CHECK_THROWS(fixation_closed_form(p));
    CHECK_THROWS(fixation_closed_form(10, -1.0, UpdateRule::DeathBirth));
}
