#include <doctest.h>

#include <cmath>
#include <vector>

#include "moranlab/density.hpp"
#include "moranlab/pde.hpp"
#include "moranlab/spectral.hpp"
#include "support/oracles.hpp"

using namespace moranlab;

TEST_CASE("potential: frozen values") {
    CHECK(sl_potential(0.0, 0.0, 0.3) == 0.0);
    CHECK(sl_potential(1.0, 2.0, 0.5) == doctest::Approx(0.0625).epsilon(1e-15));
    // alpha = beta = g: V = g^2/4 constant.
    CHECK(sl_potential(3.0, 3.0, 0.1) == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(sl_potential(3.0, 3.0, 0.9) == doctest::Approx(2.25).epsilon(1e-15));
}

TEST_CASE("neutral spectrum is (j+1)(j+2)") {
    const auto sys = eigen_solve_at(0.0, 0.0, 512, 8);
    REQUIRE(sys.lambda.size() == 8);
    for (int j = 0; j < 8; ++j) {
        const double exact = (j + 1.0) * (j + 2.0);
        CHECK(sys.lambda[static_cast<std::size_t>(j)] ==
              doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("grid ladder converges and reports its grid") {
    const auto sys = eigen_solve(0.0, 0.0, 4, 1e-8);
    CHECK(sys.converged);
    CHECK(sys.grid >= 512);
    CHECK(sys.lambda[0] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("modes are orthonormal in the weighted inner product") {
    for (const auto& ab : {std::pair<double, double>{0.0, 0.0}, {-1.0, 2.0}}) {
        const auto sys = eigen_solve_at(ab.first, ab.second, 512, 6);
        for (int i = 0; i < 6; ++i) {
            for (int j = i; j < 6; ++j) {
                const double g = omega_inner(sys, sys.modes[static_cast<std::size_t>(i)],
                                             sys.modes[static_cast<std::size_t>(j)]);
                CHECK(g == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("high modes follow quadratic growth") {
    for (const auto& ab :
         {std::pair<double, double>{1.0, 2.0}, {-1.0, 2.0}, {-2.0, -1.0}, {2.0, -2.0}}) {
        const auto sys = eigen_solve_at(ab.first, ab.second, 1024, 12);
        for (int j = 3; j < 12; ++j) {
            const double ref = (j + 1.0) * (j + 2.0);
            CHECK(std::abs(sys.lambda[static_cast<std::size_t>(j)] - ref) < 0.05 * ref);
        }
    }
}

TEST_CASE("ground eigenvalue is strictly positive across the parameter box") {
    for (const double a : {-10.0, 0.0, 10.0}) {
        for (const double b : {-10.0, 0.0, 10.0}) {
            const auto sys = eigen_solve_at(a, b, 256, 1);
            CHECK(sys.lambda[0] > 0.0);
        }
    }
    // Interior-ESS case: mass flows inward yet the gap stays open.
    const auto ess = eigen_solve_at(-1.0, 2.0, 1024, 1);
    CHECK(ess.lambda[0] > 1.7);
    CHECK(ess.lambda[0] < 1.75);
}

TEST_CASE("interior transform round trip is exact") {
    const int N = 128;
    const auto p = PdeParams::selection(-1.0, 2.0, N);
    const auto s = make_state(p, InitialCondition::parse("6x(1-x)"));
    const auto w = w_transform(-1.0, 2.0, s);
    REQUIRE(w.size() == static_cast<std::size_t>(N - 1));
    const auto q = inverse_w_transform(-1.0, 2.0, N, w);
    for (int i = 1; i < N; ++i) {
        CHECK(q[static_cast<std::size_t>(i - 1)] ==
              doctest::Approx(s.q(i)).epsilon(1e-13));
    }
}

TEST_CASE("full mode basis reproduces the initial profile at t = 0") {
    const int N = 32;
    const auto sys = eigen_solve_at(0.5, -0.5, N, N - 1);
    const auto p = PdeParams::selection(0.5, -0.5, N);
    const auto s = make_state(p, InitialCondition::parse("uniform"));
    const auto w0 = w_transform(0.5, -0.5, s);
    const auto back = spectral_evolve(sys, w0, 0.0);
    for (std::size_t i = 0; i < w0.size(); ++i) {
        CHECK(back[i] == doctest::Approx(w0[i]).epsilon(1e-9));
    }
}

TEST_CASE("mode propagation is a semigroup") {
    const auto sys = eigen_solve_at(1.0, 2.0, 128, 20);
    const auto p = PdeParams::selection(1.0, 2.0, 128);
    const auto s = make_state(p, InitialCondition::parse("6x(1-x)"));
    const auto w0 = w_transform(1.0, 2.0, s);
    const auto two_hops = spectral_evolve(sys, spectral_evolve(sys, w0, 0.05), 0.15);
    const auto one_hop = spectral_evolve(sys, w0, 0.2);
    for (std::size_t i = 0; i < w0.size(); ++i) {
        CHECK(two_hops[i] == doctest::Approx(one_hop[i]).epsilon(1e-12));
    }
}

TEST_CASE("mode expansion tracks the time stepper at matching grids") {
    for (const auto& ab : {std::pair<double, double>{0.0, 0.0}, {1.0, 2.0}}) {
        const double a = ab.first, b = ab.second;
        double prev_sup = 0.0;
        for (const int N : {200, 400}) {
            const auto p = PdeParams::selection(a, b, N);
            auto s = make_state(p, InitialCondition::parse("6x(1-x)"));
            const auto w0 = w_transform(a, b, s);
            EvolveOptions opt;
            opt.t_end = 0.1;
            evolve_pde(p, s, opt);
            const auto sys = eigen_solve_at(a, b, N, 60);
            const auto wt = spectral_evolve(sys, w0, 0.1);
            const auto q = inverse_w_transform(a, b, N, wt);
            double sup = 0.0;
            for (int i = 1; i < N; ++i) {
                sup = std::max(sup, std::abs(s.q(i) - q[static_cast<std::size_t>(i - 1)]));
            }
            CHECK(sup < 5e-3);  // discretizations differ at first order in 1/N
            if (N == 400) CHECK(sup < prev_sup);
            prev_sup = sup;
        }
    }
}

TEST_CASE("gap witness: frozen quadrature and domain guard") {
    const double beta = 2.0, xi = 3.0;
    const double A = -std::sqrt(0.5) * beta / std::sqrt(xi);
    const double B = std::sqrt(0.5) * std::sqrt(xi);
    const auto f = [](double s) { return std::exp(s * s); };
    const double oracle = oracles::simpson_ref(f, A, A + B, 2048);
    CHECK(zero_eigenvalue_witness(beta, xi) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(zero_eigenvalue_witness(beta, xi) > 0.0);
    CHECK_THROWS(zero_eigenvalue_witness(-1.0, 3.0));
    CHECK_THROWS(zero_eigenvalue_witness(2.0, -1.0));
}

TEST_CASE("solver input validation") {
    CHECK_THROWS(eigen_solve_at(0.0, 0.0, 4, 1));    // grid too small
    CHECK_THROWS(eigen_solve_at(0.0, 0.0, 64, 64));  // more modes than interior nodes
}
