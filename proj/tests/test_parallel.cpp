#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <atomic>
#include <cstdint>
#include <vector>

#include "moranlab/density.hpp"
#include "moranlab/moran.hpp"
#include "moranlab/parallel.hpp"
#include "moranlab/pde.hpp"

using namespace moranlab;

TEST_CASE("parallel loop covers every index exactly once") {
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    const std::int64_t n = 100000;
    std::vector<std::atomic<int>> hits(static_cast<std::size_t>(n));
    par_for(n, Exec::Parallel, [&](std::int64_t i) {
        hits[static_cast<std::size_t>(i)].fetch_add(1, std::memory_order_relaxed);
    });
    for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("threaded stepping is bitwise identical to serial stepping") {
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    const int N = 5000;
    MoranProcess p;
    p.N = N;
    p.payoffs = PayoffMatrix{2.0, 1.0, 3.0, 1.0};
    const auto c = chain_coefficients(p);
    std::vector<double> v(static_cast<std::size_t>(N + 1), 1.0 / (N + 1));
    std::vector<double> serial = v, parallel = v, tmp(v.size());
    for (int step = 0; step < 50; ++step) {
        apply_step(c, serial.data(), tmp.data(), Exec::Serial);
        serial.swap(tmp);
        apply_step(c, parallel.data(), tmp.data(), Exec::Parallel);
        parallel.swap(tmp);
    }
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("threaded distribution evolution matches serial bit for bit") {
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    const auto params = PdeParams::selection(-1.0, 2.0, 4096);
    ContinuumState a = make_state(params, InitialCondition::parse("6x(1-x)"));
    ContinuumState b = a;
    EvolveOptions serial_opt;
    serial_opt.t_end = 64.0 / (4096.0 * 4096.0);  // 64 steps
    serial_opt.policy = Exec::Serial;
    EvolveOptions parallel_opt = serial_opt;
    parallel_opt.policy = Exec::Parallel;
    evolve_pde(params, a, serial_opt);
    evolve_pde(params, b, parallel_opt);
    for (std::size_t i = 0; i < a.prob.size(); ++i) CHECK(a.prob[i] == b.prob[i]);
}

TEST_CASE("runtime reporting is consistent") {
#ifdef _OPENMP
    CHECK(openmp_enabled());
    CHECK(max_threads() >= 1);
#else
    CHECK_FALSE(openmp_enabled());
    CHECK(max_threads() == 1);
#endif
}
