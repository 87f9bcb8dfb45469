#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace moranlab {

// Composite Simpson rule with `panels` panels (2*panels subintervals).
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("simpson: panels must be >= 1");
    const double h = (b - a) / (2.0 * panels);
    double odd = 0.0, even = 0.0;
    for (int k = 1; k < 2 * panels; k += 2) odd += f(a + k * h);
    for (int k = 2; k < 2 * panels; k += 2) even += f(a + k * h);
    return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

struct QuadratureResult {
    double value = 0.0;
    int panels = 0;
    bool converged = false;
};

// Simpson with panel doubling until two successive estimates differ by less
// than `tol` (scaled by the magnitude of the integral for large values).
template <typename F>
QuadratureResult simpson_doubling(F&& f, double a, double b, double tol = 1e-10,
                                  int start_panels = 2048, int max_doublings = 8) {
    int panels = start_panels;
    double prev = simpson(f, a, b, panels);
    for (int it = 0; it < max_doublings; ++it) {
        panels *= 2;
        const double cur = simpson(f, a, b, panels);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) {
            return {cur, panels, true};
        }
        prev = cur;
    }
    return {prev, panels, false};
}

// Cumulative Simpson integral: returns the integral from `a` to every even
// node of a uniform grid with `subintervals` subintervals (subintervals must
// be even).  Entry k of the result is the integral up to a + 2k*h.
template <typename F>
std::vector<double> simpson_cumulative(F&& f, double a, double b, int subintervals) {
    if (subintervals < 2 || subintervals % 2 != 0) {
        throw std::invalid_argument("simpson_cumulative: subintervals must be even and >= 2");
    }
    const double h = (b - a) / subintervals;
    std::vector<double> cum(static_cast<std::size_t>(subintervals / 2) + 1);
    cum[0] = 0.0;
    double left = f(a);
    for (int k = 0; k < subintervals / 2; ++k) {
        const double mid = f(a + (2 * k + 1) * h);
        const double right = f(a + (2 * k + 2) * h);
        cum[static_cast<std::size_t>(k) + 1] =
            cum[static_cast<std::size_t>(k)] + (h / 3.0) * (left + 4.0 * mid + right);
        left = right;
    }
    return cum;
}

}  // namespace moranlab
