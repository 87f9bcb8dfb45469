#include "moranlab/moran.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace moranlab {

void validate_process(const MoranProcess& p) {
    if (p.N < 2) throw std::invalid_argument("population size must be at least 2");
    validate_payoffs(p.payoffs);
}

double fitness_a(const MoranProcess& p, int n) {
    if (n < 1 || n > p.N) throw std::out_of_range("fitness_a: n must be in [1, N]");
    const double nn = n, K = p.N;
    return ((nn - 1.0) * p.payoffs.A + (K - nn) * p.payoffs.B) / (K - 1.0);
}

double fitness_b(const MoranProcess& p, int n) {
    if (n < 0 || n > p.N - 1) throw std::out_of_range("fitness_b: n must be in [0, N-1]");
    const double nn = n, K = p.N;
    return (nn * p.payoffs.C + (K - nn - 1.0) * p.payoffs.D) / (K - 1.0);
}

double relative_fitness(const MoranProcess& p, int n) {
    if (n < 1 || n > p.N - 1) throw std::out_of_range("relative_fitness: n must be in [1, N-1]");
    const double nn = n, K = p.N;
    return ((p.payoffs.A - p.payoffs.B) * nn + p.payoffs.B * K - p.payoffs.A) /
           ((p.payoffs.C - p.payoffs.D) * nn + (K - 1.0) * p.payoffs.D);
}

TransitionCoefficients transition_coefficients(const MoranProcess& p, int n) {
    if (n < 0 || n > p.N) throw std::out_of_range("transition_coefficients: bad state");
    if (n == 0 || n == p.N) return {0.0, 1.0, 0.0};
    const double nn = n, K = p.N;
    const double phi_a = fitness_a(p, n);
    const double phi_b = fitness_b(p, n);
    double up, down;
    if (p.rule == UpdateRule::DeathBirth) {
        // The dying slot's own fitness is excluded from the birth lottery,
        // hence the two different denominators.
        up = ((K - nn) / K) * (nn * phi_a / (nn * phi_a + (K - nn - 1.0) * phi_b));
        down = (nn / K) * ((K - nn) * phi_b / ((nn - 1.0) * phi_a + (K - nn) * phi_b));
    } else {
        up = ((K - nn) / K) * (nn * phi_a / (nn * phi_a + (K - nn) * phi_b));
        down = (nn / K) * ((K - nn) * phi_b / (nn * phi_a + (K - nn) * phi_b));
    }
    const double stay = 1.0 - (up + down);
    if (stay < -1e-12) throw std::runtime_error("transition_coefficients: negative stay");
    return {up, std::max(stay, 0.0), down};
}

TransitionCoefficients transition_coefficients_factored(const MoranProcess& p, int n) {
    if (n < 0 || n > p.N) throw std::out_of_range("transition_coefficients: bad state");
    if (n == 0 || n == p.N) return {0.0, 1.0, 0.0};
    const double nn = n, K = p.N;
    const double rho = relative_fitness(p, n);
    const double f = (nn / K) * ((K - nn) / K);
    double up, down;
    if (p.rule == UpdateRule::DeathBirth) {
        const auto g = [&](double m) { return (K - 1.0 + (rho - 1.0) * m) / K; };
        up = f * rho / g(nn);
        down = f / g(nn - 1.0);
    } else {
        const double gt = (K + (rho - 1.0) * nn) / K;
        up = f * rho / gt;
        down = f / gt;
    }
    const double stay = 1.0 - (up + down);
    return {up, std::max(stay, 0.0), down};
}

ChainCoefficients chain_coefficients(const MoranProcess& p) {
    validate_process(p);
    ChainCoefficients c;
    c.N = p.N;
    c.up.resize(static_cast<std::size_t>(p.N) + 1);
    c.stay.resize(static_cast<std::size_t>(p.N) + 1);
    c.down.resize(static_cast<std::size_t>(p.N) + 1);
    for (int n = 0; n <= p.N; ++n) {
        const auto t = transition_coefficients(p, n);
        c.up[static_cast<std::size_t>(n)] = t.up;
        c.stay[static_cast<std::size_t>(n)] = t.stay;
        c.down[static_cast<std::size_t>(n)] = t.down;
    }
    return c;
}

void apply_step(const ChainCoefficients& c, const double* in, double* out, Exec policy) {
    const int N = c.N;
    const double* up = c.up.data();
    const double* stay = c.stay.data();
    const double* down = c.down.data();
    out[0] = stay[0] * in[0] + down[1] * in[1];
    out[N] = stay[N] * in[N] + up[N - 1] * in[N - 1];
    par_for(N - 1, policy, [=](std::int64_t i) {
        const int n = static_cast<int>(i) + 1;
        out[n] = stay[n] * in[n] + (up[n - 1] * in[n - 1] + down[n + 1] * in[n + 1]);
    });
}

SquareMatrix build_matrix(const MoranProcess& p) {
    const auto c = chain_coefficients(p);
    SquareMatrix M(p.N + 1);
    for (int j = 0; j <= p.N; ++j) {
        M.at(j, j) = c.stay[static_cast<std::size_t>(j)];
        if (j + 1 <= p.N) M.at(j + 1, j) = c.up[static_cast<std::size_t>(j)];
        if (j - 1 >= 0) M.at(j - 1, j) = c.down[static_cast<std::size_t>(j)];
    }
    return M;
}

std::vector<double> evolve(const MoranProcess& p, std::vector<double> P0,
                           std::int64_t steps, Exec policy) {
    const auto c = chain_coefficients(p);
    if (P0.size() != static_cast<std::size_t>(p.N) + 1) {
        throw std::invalid_argument("evolve: distribution has wrong length");
    }
    std::vector<double> next(P0.size());
    for (std::int64_t s = 0; s < steps; ++s) {
        apply_step(c, P0.data(), next.data(), policy);
        P0.swap(next);
    }
    return P0;
}

SquareMatrix matrix_power(const MoranProcess& p, std::int64_t k) {
    const auto c = chain_coefficients(p);
    const int m = p.N + 1;
    // Columns held contiguously so each one evolves independently.
    std::vector<std::vector<double>> cols(static_cast<std::size_t>(m),
                                          std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int j = 0; j < m; ++j) cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0;
    std::vector<double> tmp(static_cast<std::size_t>(m));
    for (std::int64_t s = 0; s < k; ++s) {
        for (int j = 0; j < m; ++j) {
            auto& col = cols[static_cast<std::size_t>(j)];
            apply_step(c, col.data(), tmp.data(), Exec::Serial);
            col.swap(tmp);
        }
    }
    SquareMatrix M(m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) M.at(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    return M;
}

namespace {

SquareMatrix matmul(const SquareMatrix& X, const SquareMatrix& Y) {
    const int m = X.n;
    SquareMatrix Z(m);
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            const double xik = X.at(i, k);
            if (xik == 0.0) continue;
            const double* yrow = &Y.a[static_cast<std::size_t>(k) * m];
            double* zrow = &Z.a[static_cast<std::size_t>(i) * m];
            for (int j = 0; j < m; ++j) zrow[j] += xik * yrow[j];
        }
    }
    return Z;
}

double max_abs_diff(const SquareMatrix& X, const SquareMatrix& Y) {
    double d = 0.0;
    for (std::size_t i = 0; i < X.a.size(); ++i) d = std::max(d, std::abs(X.a[i] - Y.a[i]));
    return d;
}

}  // namespace

PowerLimit power_limit(const MoranProcess& p, double tol, int max_squarings) {
    SquareMatrix X = build_matrix(p);
    for (int s = 1; s <= max_squarings; ++s) {
        SquareMatrix Y = matmul(X, X);
        const double d = max_abs_diff(X, Y);
        X = std::move(Y);
        if (d < tol) return {std::move(X), s};
    }
    throw std::runtime_error("power_limit: no convergence within " +
                             std::to_string(max_squarings) + " squarings");
}

std::vector<double> fixation_recursive(const MoranProcess& p) {
    validate_process(p);
    const int N = p.N;
    const double K = N;
    // log H(n) with H = down/up from the factored form.
    std::vector<double> logH(static_cast<std::size_t>(N), 0.0);  // index n = 1..N-1
    for (int n = 1; n <= N - 1; ++n) {
        const double rho = relative_fitness(p, n);
        double v;
        if (p.rule == UpdateRule::DeathBirth) {
            const double gn = (K - 1.0 + (rho - 1.0) * n) / K;
            const double gm = (K - 1.0 + (rho - 1.0) * (n - 1.0)) / K;
            v = std::log(gn) - std::log(rho) - std::log(gm);
        } else {
            v = -std::log(rho);
        }
        logH[static_cast<std::size_t>(n)] = v;
    }
    // Prefix log-products: pref[k] = sum_{i<k} log H(i), k = 1..N.
    std::vector<double> pref(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 2; k <= N; ++k) {
        pref[static_cast<std::size_t>(k)] =
            pref[static_cast<std::size_t>(k) - 1] + logH[static_cast<std::size_t>(k) - 1];
    }
    double mx = pref[1];
    for (int k = 2; k <= N; ++k) mx = std::max(mx, pref[static_cast<std::size_t>(k)]);
    std::vector<double> F(static_cast<std::size_t>(N) + 1, 0.0);
    double run = 0.0;
    for (int k = 1; k <= N; ++k) {
        run += std::exp(pref[static_cast<std::size_t>(k)] - mx);
        F[static_cast<std::size_t>(k)] = run;
    }
    const double total = F[static_cast<std::size_t>(N)];
    for (int n = 1; n <= N; ++n) F[static_cast<std::size_t>(n)] /= total;
    return F;
}

std::vector<double> fixation_closed_form(int N, double r, UpdateRule rule) {
    if (N < 2) throw std::invalid_argument("population size must be at least 2");
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("r must be positive");
    std::vector<double> F(static_cast<std::size_t>(N) + 1, 0.0);
    const double K = N;
    if (std::abs(r - 1.0) < 1e-10) {
        for (int n = 0; n <= N; ++n) F[static_cast<std::size_t>(n)] = n / K;
        return F;
    }
    const double L = std::log(r);
    for (int n = 0; n <= N; ++n) {
        const double x = n;
        double val;
        if (rule == UpdateRule::DeathBirth) {
            if (L <= 0.0) {
                val = (-std::expm1(x * L) + (x / K) * std::exp((x - 1.0) * L) * (r - 1.0)) /
                      (-std::expm1((K - 1.0) * L));
            } else {
                // Scaled by r^(1-N) so every exponent stays bounded.
                const double num = std::exp((1.0 - K) * L) - std::exp((x + 1.0 - K) * L) +
                                   (x / K) * std::exp((x - K) * L) * (r - 1.0);
                const double den = std::exp((1.0 - K) * L) - 1.0;
                val = num / den;
            }
        } else {
            if (L <= 0.0) {
                val = std::expm1(x * L) / std::expm1(K * L);
            } else {
                val = (std::exp(-K * L) - std::exp((x - K) * L)) / (std::exp(-K * L) - 1.0);
            }
        }
        F[static_cast<std::size_t>(n)] = val;
    }
    return F;
}

std::vector<double> fixation_closed_form(const MoranProcess& p) {
    validate_process(p);
    if (p.payoffs.A != p.payoffs.B || p.payoffs.C != p.payoffs.D) {
        throw std::invalid_argument(
            "closed form needs frequency-independent payoffs (A == B, C == D)");
    }
    return fixation_closed_form(p.N, p.payoffs.C / p.payoffs.A, p.rule);
}

double inner(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("inner: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

}  // namespace moranlab
