#include "moranlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "moranlab/quadrature.hpp"

namespace moranlab {

PdeParams reflected(const PdeParams& p) {
    return {Increments{p.inc.d, p.inc.c, p.inc.b, p.inc.a}, p.grid};
}

MoranProcess weak_selection_chain(const PdeParams& p) {
    if (p.grid < 4) throw std::invalid_argument("grid must have at least 4 cells");
    const double K = p.grid;
    const PayoffMatrix payoffs{1.0 + p.inc.a / K, 1.0 + p.inc.b / K, 1.0 + p.inc.c / K,
                               1.0 + p.inc.d / K};
    validate_payoffs(payoffs);
    return MoranProcess{p.grid, payoffs, UpdateRule::DeathBirth};
}

double ContinuumState::interior_mass() const {
    double s = 0.0;
    for (int i = 1; i < grid; ++i) s += prob[static_cast<std::size_t>(i)];
    return s;
}

double ContinuumState::interior_sup_q() const {
    double m = 0.0;
    for (int i = 1; i < grid; ++i) m = std::max(m, prob[static_cast<std::size_t>(i)]);
    return m * grid;
}

ContinuumState make_state(const PdeParams& p, const InitialCondition& ic) {
    ContinuumState s;
    s.grid = p.grid;
    s.step = 0;
    s.prob = ic.discretize(p.grid);
    return s;
}

namespace {

double kernel_exponent(double alpha, double beta, double y) {
    return -0.5 * y * y * (alpha - beta) - y * beta;
}

}  // namespace

PdeRunStats evolve_pde(const PdeParams& p, ContinuumState& state, const EvolveOptions& opt) {
    if (state.grid != p.grid) throw std::invalid_argument("state grid does not match parameters");
    if (!(opt.t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
    if (opt.check_every < 1) throw std::invalid_argument("check_every must be positive");
    const auto chain = weak_selection_chain(p);
    const auto coeffs = chain_coefficients(chain);
    const double K = p.grid;
    const std::int64_t target_steps = std::llround(opt.t_end * K * K);

    const std::vector<double> F = fixation_recursive(chain);
    const std::vector<double> psi_nodes = psi_profile(p.alpha(), p.beta(), p.grid);
    const double inner0 = inner(state.prob, F);
    const double psi0 = inner(state.prob, psi_nodes);

    PdeRunStats stats;
    stats.min_prob = std::numeric_limits<double>::infinity();
    std::vector<double> next(state.prob.size());
    const auto check = [&]() {
        double mass = 0.0, mn = state.prob[0];
        for (double v : state.prob) {
            mass += v;
            mn = std::min(mn, v);
        }
        stats.mass_defect = std::max(stats.mass_defect, std::abs(1.0 - mass));
        stats.min_prob = std::min(stats.min_prob, mn);
        if (mn < -1e-12) throw std::runtime_error("evolve_pde: negative probability");
        stats.conserved_inner_drift =
            std::max(stats.conserved_inner_drift, std::abs(inner(state.prob, F) - inner0));
        stats.psi_inner_drift =
            std::max(stats.psi_inner_drift, std::abs(inner(state.prob, psi_nodes) - psi0));
    };

    check();
    while (state.step < target_steps) {
        apply_step(coeffs, state.prob.data(), next.data(), opt.policy);
        state.prob.swap(next);
        ++state.step;
        const bool checkpoint = (state.step % opt.check_every == 0) || state.step == target_steps;
        if (checkpoint) {
            check();
            if (opt.steady_sup > 0.0 && state.interior_sup_q() < opt.steady_sup) {
                stats.steady = true;
            }
        }
        if (opt.observer && opt.observe_every > 0 &&
            (state.step % opt.observe_every == 0 || state.step == target_steps)) {
            opt.observer(state);
        }
        if (stats.steady) break;
    }
    stats.steps = state.step;
    return stats;
}

double psi(double alpha, double beta, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("psi: x outside [0,1]");
    if (x == 0.0) return 0.0;
    const auto f = [&](double y) { return std::exp(kernel_exponent(alpha, beta, y)); };
    const auto num = simpson_doubling(f, 0.0, x);
    const auto den = simpson_doubling(f, 0.0, 1.0);
    if (!num.converged || !den.converged) throw std::runtime_error("psi: quadrature not converged");
    return num.value / den.value;
}

std::vector<double> psi_profile(double alpha, double beta, int grid) {
    const auto f = [&](double y) { return std::exp(kernel_exponent(alpha, beta, y)); };
    // Cumulative Simpson with nodes on the grid: 2*grid subintervals puts the
    // even nodes exactly at i/grid.
    const int refine = std::max(1, 2048 / grid);
    const auto cum = simpson_cumulative(f, 0.0, 1.0, 2 * grid * refine);
    std::vector<double> out(static_cast<std::size_t>(grid) + 1);
    const double total = cum.back();
    for (int i = 0; i <= grid; ++i) {
        out[static_cast<std::size_t>(i)] = cum[static_cast<std::size_t>(i) * refine] / total;
    }
    return out;
}

double fixation_limit(double gamma, double x0) {
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("fixation_limit: x0 outside [0,1]");
    if (gamma == 0.0) return x0;
    return std::expm1(-gamma * x0) / std::expm1(-gamma);
}

double pi_one(double alpha, double beta, const InitialCondition& ic) {
    if (ic.kind() == InitialCondition::Kind::Delta) {
        return psi(alpha, beta, ic.delta_position());
    }
    const auto f = [&](double y) { return std::exp(kernel_exponent(alpha, beta, y)); };
    // Nested integral: int p0(x) [int_0^x kernel] dx / int_0^1 kernel, with
    // the inner cumulative and both outer integrals refined together.
    double prev = 0.0;
    for (int sub = 4096;; sub *= 2) {
        const auto cum = simpson_cumulative(f, 0.0, 1.0, sub);
        const double total = cum.back();
        const double h = 1.0 / (sub / 2);
        // Composite Simpson over the even-node grid for p0(x) * Psi(x).
        const auto val = [&](int k) {
            const double x = k * h;
            return ic.density_at(x) * (cum[static_cast<std::size_t>(k)] / total);
        };
        double odd = 0.0, even = 0.0;
        for (int k = 1; k < sub / 2; k += 2) odd += val(k);
        for (int k = 2; k < sub / 2; k += 2) even += val(k);
        double mass_odd = 0.0, mass_even = 0.0;
        const auto dens = [&](int k) { return ic.density_at(k * h); };
        for (int k = 1; k < sub / 2; k += 2) mass_odd += dens(k);
        for (int k = 2; k < sub / 2; k += 2) mass_even += dens(k);
        const double num = (h / 3.0) * (val(0) + val(sub / 2) + 4.0 * odd + 2.0 * even);
        const double mass = (h / 3.0) * (dens(0) + dens(sub / 2) + 4.0 * mass_odd + 2.0 * mass_even);
        const double cur = num / mass;
        if (sub > 4096 && std::abs(cur - prev) < 1e-9) return cur;
        if (sub >= 1 << 20) return cur;
        prev = cur;
    }
}

std::vector<double> conserved_profile(const PdeParams& p) {
    return fixation_recursive(weak_selection_chain(p));
}

std::vector<ConvergenceRow> convergence_harness(double alpha, double beta,
                                                const InitialCondition& ic,
                                                std::span<const int> grids, double steady_sup,
                                                double t_cap, Exec policy) {
    const double target =
        (alpha == beta) && ic.kind() == InitialCondition::Kind::Delta
            ? fixation_limit(alpha, ic.delta_position())
            : pi_one(alpha, beta, ic);
    std::vector<ConvergenceRow> rows(grids.size());
    // Each grid runs independently; parallel sweeps keep the inner stepper
    // serial so results do not depend on the policy.
    par_for(static_cast<std::int64_t>(grids.size()), policy, [&](std::int64_t g) {
        const int grid = grids[static_cast<std::size_t>(g)];
        const PdeParams params = PdeParams::selection(alpha, beta, grid);
        ContinuumState s = make_state(params, ic);
        EvolveOptions opt;
        opt.t_end = t_cap;
        opt.steady_sup = steady_sup;
        opt.policy = Exec::Serial;
        const auto stats = evolve_pde(params, s, opt);
        ConvergenceRow row;
        row.grid = grid;
        row.absorbed_top = s.b();
        row.target = target;
        row.abs_error = std::abs(s.b() - target);
        row.mass_defect = stats.mass_defect;
        row.steps = stats.steps;
        row.steady = stats.steady;
        rows[static_cast<std::size_t>(g)] = row;
    }, 1);
    return rows;
}

double interior_weighted_l2(const ContinuumState& s) {
    double J = 0.0;
    for (int i = 1; i < s.grid; ++i) {
        const double x = s.x(i);
        const double q = s.q(i);
        J += x * (1.0 - x) * q * q;
    }
    return J / s.grid;
}

}  // namespace moranlab
