#include "moranlab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace moranlab {

namespace {

double matrix_scale(const SymTridiag& T) {
    double scale = 0.0;
    for (double d : T.diag) scale = std::max(scale, std::abs(d));
    for (double e : T.off) scale = std::max(scale, std::abs(e));
    return std::max(scale, std::numeric_limits<double>::min());
}

}  // namespace

int sturm_count_below(const SymTridiag& T, double x) {
    const int m = T.size();
    const double floor_q =
        matrix_scale(T) * std::numeric_limits<double>::epsilon() *
        std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = T.diag[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < m; ++i) {
        if (std::abs(q) < floor_q) q = (q < 0.0) ? -floor_q : floor_q;
        const double e = T.off[static_cast<std::size_t>(i) - 1];
        q = T.diag[static_cast<std::size_t>(i)] - x - e * e / q;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const SymTridiag& T, int k) {
    const int m = T.size();
    if (k < 1 || k > m) throw std::invalid_argument("lowest_eigenvalues: bad count");
    double gl = T.diag[0], gu = T.diag[0];
    for (int i = 0; i < m; ++i) {
        const double e_left = (i > 0) ? std::abs(T.off[static_cast<std::size_t>(i) - 1]) : 0.0;
        const double e_right =
            (i + 1 < m) ? std::abs(T.off[static_cast<std::size_t>(i)]) : 0.0;
        gl = std::min(gl, T.diag[static_cast<std::size_t>(i)] - e_left - e_right);
        gu = std::max(gu, T.diag[static_cast<std::size_t>(i)] + e_left + e_right);
    }
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        double lo = gl, hi = gu;
        for (int it = 0; it < 140; ++it) {
            const double width = hi - lo;
            if (width <= 4.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(lo), std::abs(hi)) +
                         1e-13) {
                break;
            }
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(T, mid) > j) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out[static_cast<std::size_t>(j)] = 0.5 * (lo + hi);
    }
    return out;
}

namespace {

// One solve of (T - lambda I) x = b: LU with partial pivoting in banded
// storage (one fill-in superdiagonal).  Near-singular pivots are floored at
// eps * scale, which is exactly what inverse iteration wants.
std::vector<double> shifted_solve(const SymTridiag& T, double lambda,
                                  std::vector<double> b) {
    const int m = T.size();
    const double tiny = matrix_scale(T) * std::numeric_limits<double>::epsilon();
    std::vector<double> d(static_cast<std::size_t>(m));
    std::vector<double> u1(static_cast<std::size_t>(m), 0.0);
    std::vector<double> u2(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        d[static_cast<std::size_t>(i)] = T.diag[static_cast<std::size_t>(i)] - lambda;
        if (i + 1 < m) u1[static_cast<std::size_t>(i)] = T.off[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i + 1 < m; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        double sub = T.off[s];
        if (std::abs(sub) > std::abs(d[s])) {
            std::swap(d[s], sub);
            std::swap(u1[s], d[s + 1]);
            u2[s] = u1[s + 1];
            u1[s + 1] = 0.0;
            std::swap(b[s], b[s + 1]);
        }
        if (std::abs(d[s]) < tiny) d[s] = (d[s] < 0.0) ? -tiny : tiny;
        const double factor = sub / d[s];
        d[s + 1] -= factor * u1[s];
        if (i + 2 < m) u1[s + 1] -= factor * u2[s];
        b[s + 1] -= factor * b[s];
    }
    const std::size_t last = static_cast<std::size_t>(m) - 1;
    if (std::abs(d[last]) < tiny) d[last] = (d[last] < 0.0) ? -tiny : tiny;
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
        const std::size_t s = static_cast<std::size_t>(i);
        double acc = b[s];
        if (i + 1 < m) acc -= u1[s] * x[s + 1];
        if (i + 2 < m) acc -= u2[s] * x[s + 2];
        x[s] = acc / d[s];
    }
    return x;
}

}  // namespace

std::vector<double> inverse_iteration(const SymTridiag& T, double lambda) {
    const int m = T.size();
    std::vector<double> v(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        v[static_cast<std::size_t>(i)] =
            1.0 + 0.317 * static_cast<double>((static_cast<unsigned>(i) * 2654435761u) % 97u) / 97.0;
    }
    for (int it = 0; it < 4; ++it) {
        v = shifted_solve(T, lambda, std::move(v));
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw std::runtime_error("inverse_iteration: breakdown");
        }
        for (double& c : v) c /= norm;
    }
    int imax = 0;
    for (int i = 1; i < m; ++i) {
        if (std::abs(v[static_cast<std::size_t>(i)]) > std::abs(v[static_cast<std::size_t>(imax)])) {
            imax = i;
        }
    }
    if (v[static_cast<std::size_t>(imax)] < 0.0) {
        for (double& c : v) c = -c;
    }
    return v;
}

std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() + 1 != n || upper.size() + 1 != n || rhs.size() != n) {
        throw std::invalid_argument("thomas_solve: inconsistent sizes");
    }
    std::vector<double> c(n - 1);
    double d = diag[0];
    if (d == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
    if (n > 1) c[0] = upper[0] / d;
    rhs[0] /= d;
    for (std::size_t i = 1; i < n; ++i) {
        d = diag[i] - lower[i - 1] * c[i - 1];
        if (d == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
        if (i + 1 < n) c[i] = upper[i] / d;
        rhs[i] = (rhs[i] - lower[i - 1] * rhs[i - 1]) / d;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= c[i] * rhs[i + 1];
    }
    return rhs;
}

}  // namespace moranlab
