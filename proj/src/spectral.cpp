#include "moranlab/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "moranlab/quadrature.hpp"
#include "moranlab/tridiag.hpp"

namespace moranlab {

double sl_potential(double alpha, double beta, double x) {
    const double drift = beta + (alpha - beta) * x;
    return 0.5 * (alpha - beta) + 0.25 * drift * drift;
}

namespace {

// Symmetrized finite-difference matrix: the generalized problem A w = lambda
// Omega w becomes the ordinary symmetric tridiagonal problem for
// v = Omega^(1/2) w with entries scaled by 1/sqrt(omega_i omega_j).
SymTridiag build_operator(double alpha, double beta, int grid) {
    const int m = grid - 1;
    const double h = 1.0 / grid;
    SymTridiag T;
    T.diag.resize(static_cast<std::size_t>(m));
    T.off.resize(static_cast<std::size_t>(m) - 1);
    const auto weight = [&](int i) {
        const double x = static_cast<double>(i) / grid;
        return x * (1.0 - x);  // 1/omega
    };
    for (int i = 1; i <= m; ++i) {
        const double x = static_cast<double>(i) / grid;
        T.diag[static_cast<std::size_t>(i) - 1] =
            (2.0 / (h * h) + sl_potential(alpha, beta, x)) * weight(i);
        if (i < m) {
            T.off[static_cast<std::size_t>(i) - 1] =
                -(1.0 / (h * h)) * std::sqrt(weight(i) * weight(i + 1));
        }
    }
    return T;
}

}  // namespace

EigenSystem eigen_solve_at(double alpha, double beta, int grid, int modes) {
    if (grid < 8 || modes < 1 || modes > grid - 1) {
        throw std::invalid_argument("eigen_solve_at: bad grid/mode count");
    }
    const SymTridiag T = build_operator(alpha, beta, grid);
    EigenSystem sys;
    sys.alpha = alpha;
    sys.beta = beta;
    sys.grid = grid;
    sys.lambda = lowest_eigenvalues(T, modes);
    sys.modes.resize(static_cast<std::size_t>(modes));
    const double h = 1.0 / grid;
    for (int j = 0; j < modes; ++j) {
        auto v = inverse_iteration(T, sys.lambda[static_cast<std::size_t>(j)]);
        // psi_i = v_i / sqrt(omega_i h): omega-orthonormal on the grid.
        for (int i = 1; i <= grid - 1; ++i) {
            const double x = static_cast<double>(i) / grid;
            v[static_cast<std::size_t>(i) - 1] *= std::sqrt(x * (1.0 - x) / h);
        }
        sys.modes[static_cast<std::size_t>(j)] = std::move(v);
    }
    return sys;
}

EigenSystem eigen_solve(double alpha, double beta, int modes, double lambda_tol, int grid0,
                        int grid_max) {
    double prev = 0.0;
    bool have_prev = false;
    for (int grid = grid0; grid <= grid_max; grid *= 2) {
        const SymTridiag T = build_operator(alpha, beta, grid);
        const double l0 = lowest_eigenvalues(T, 1)[0];
        if (have_prev && std::abs(l0 - prev) < lambda_tol) {
            auto sys = eigen_solve_at(alpha, beta, grid, modes);
            sys.converged = true;
            return sys;
        }
        prev = l0;
        have_prev = true;
        if (grid * 2 > grid_max) {
            auto sys = eigen_solve_at(alpha, beta, grid, modes);
            sys.converged = false;
            return sys;
        }
    }
    throw std::logic_error("eigen_solve: unreachable");
}

std::vector<double> w_transform(double alpha, double beta, const ContinuumState& s) {
    std::vector<double> w(static_cast<std::size_t>(s.grid) - 1);
    for (int i = 1; i < s.grid; ++i) {
        const double x = s.x(i);
        w[static_cast<std::size_t>(i) - 1] =
            x * (1.0 - x) * s.q(i) *
            std::exp(-0.5 * (beta * x + 0.5 * (alpha - beta) * x * x));
    }
    return w;
}

std::vector<double> inverse_w_transform(double alpha, double beta, int grid,
                                        const std::vector<double>& w) {
    if (w.size() != static_cast<std::size_t>(grid) - 1) {
        throw std::invalid_argument("inverse_w_transform: size mismatch");
    }
    std::vector<double> q(w.size());
    for (int i = 1; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        q[static_cast<std::size_t>(i) - 1] =
            w[static_cast<std::size_t>(i) - 1] *
            std::exp(0.5 * (beta * x + 0.5 * (alpha - beta) * x * x)) / (x * (1.0 - x));
    }
    return q;
}

double omega_inner(const EigenSystem& sys, const std::vector<double>& u,
                   const std::vector<double>& v) {
    if (u.size() != v.size() || u.size() != static_cast<std::size_t>(sys.grid) - 1) {
        throw std::invalid_argument("omega_inner: size mismatch");
    }
    double acc = 0.0;
    for (int i = 1; i < sys.grid; ++i) {
        const double x = static_cast<double>(i) / sys.grid;
        acc += u[static_cast<std::size_t>(i) - 1] * v[static_cast<std::size_t>(i) - 1] /
               (x * (1.0 - x));
    }
    return acc / sys.grid;
}

std::vector<double> spectral_evolve(const EigenSystem& sys, const std::vector<double>& w0,
                                    double t) {
    std::vector<double> w(w0.size(), 0.0);
    for (std::size_t j = 0; j < sys.modes.size(); ++j) {
        const double c = omega_inner(sys, w0, sys.modes[j]) * std::exp(-sys.lambda[j] * t);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += c * sys.modes[j][i];
    }
    return w;
}

double zero_eigenvalue_witness(double beta, double xi) {
    if (!(xi > 0.0)) throw std::invalid_argument("witness needs xi = beta - alpha > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("witness applies to the beta > 0 > alpha regime");
    const double root_half = std::sqrt(0.5);
    const double A = -root_half * beta / std::sqrt(xi);
    const double B = root_half * std::sqrt(xi);
    const auto res = simpson_doubling([](double s) { return std::exp(s * s); }, A, A + B, 1e-12);
    if (!res.converged) throw std::runtime_error("witness quadrature not converged");
    return res.value;
}

}  // namespace moranlab
