// Timing harness for the distribution-stepping kernel: serial against
// threaded execution at several chain sizes, with a bitwise cross-check of
// the final distributions.
#include <chrono>
#include <cstdio>
#include <vector>

#include "moranlab/moran.hpp"
#include "moranlab/parallel.hpp"

using namespace moranlab;

namespace {

double run_steps(const ChainCoefficients& c, std::vector<double>& v, std::vector<double>& tmp,
                 int steps, Exec policy) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int s = 0; s < steps; ++s) {
        apply_step(c, v.data(), tmp.data(), policy);
        v.swap(tmp);
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    std::printf("stepping kernel, %d thread(s) available (threading %s)\n", max_threads(),
                openmp_enabled() ? "on" : "off");
    std::printf("%10s %8s %12s %12s %9s %s\n", "states", "steps", "serial s", "threaded s",
                "speedup", "bitwise");
    const int steps = 2000;
    for (const int N : {1000, 4000, 16000, 64000}) {
        MoranProcess p;
        p.N = N;
        p.payoffs = PayoffMatrix{2.0, 1.0, 3.0, 1.0};
        const auto c = chain_coefficients(p);
        const std::vector<double> init(static_cast<std::size_t>(N) + 1, 1.0 / (N + 1));
        std::vector<double> tmp(init.size());

        std::vector<double> a = init;
        const double ts = run_steps(c, a, tmp, steps, Exec::Serial);
        std::vector<double> b = init;
        const double tp = run_steps(c, b, tmp, steps, Exec::Parallel);

        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i] == b[i];
        std::printf("%10d %8d %12.4f %12.4f %8.2fx %s\n", N + 1, steps, ts, tp, ts / tp,
                    same ? "equal" : "DIFFER");
        if (!same) return 1;
    }
    return 0;
}
