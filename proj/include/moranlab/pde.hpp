#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "moranlab/density.hpp"
#include "moranlab/game.hpp"
#include "moranlab/moran.hpp"
#include "moranlab/parallel.hpp"

namespace moranlab {

// Parameters of the weak-selection continuum dynamics
//   dp/dt = dxx[x(1-x) p] - dx[x(1-x)(alpha x + beta(1-x)) p]
// realized as a Moran chain with payoffs 1 + inc/grid and time step
// 1/grid^2.  The full increment 4-tuple is kept (not just alpha, beta): the
// reflected system is then the exact payoff mirror, which the stepper turns
// into a bit-exact solution mirror.
struct PdeParams {
    Increments inc;
    int grid = 100;

    double alpha() const { return inc.alpha(); }
    double beta() const { return inc.beta(); }

    static PdeParams selection(double alpha, double beta, int grid) {
        return {Increments{alpha, beta, 0.0, 0.0}, grid};
    }
};

PdeParams reflected(const PdeParams& p);

// The finite chain that discretizes the dynamics.
MoranProcess weak_selection_chain(const PdeParams& p);

// Distribution over the nodes x_i = i/grid at a given time.  prob[0] and
// prob[grid] are the absorbed masses at the boundaries; interior density is
// q(x_i) = grid * prob[i].
struct ContinuumState {
    int grid = 0;
    std::int64_t step = 0;
    std::vector<double> prob;

    double t() const { return static_cast<double>(step) / (static_cast<double>(grid) * grid); }
    double x(int i) const { return static_cast<double>(i) / grid; }
    double a() const { return prob.front(); }
    double b() const { return prob.back(); }
    double q(int i) const { return grid * prob[static_cast<std::size_t>(i)]; }
    double interior_mass() const;
    double interior_sup_q() const;
};

ContinuumState make_state(const PdeParams& p, const InitialCondition& ic);

struct EvolveOptions {
    double t_end = 1.0;
    // When positive, stop early once the interior density supremum falls
    // below this value (the remaining mass is then below ~sup/grid).
    double steady_sup = 0.0;
    std::int64_t check_every = 128;
    Exec policy = Exec::Auto;
    // Observer invoked every observe_every steps (and at the end) when set.
    std::int64_t observe_every = 0;
    std::function<void(const ContinuumState&)> observer;
};

struct PdeRunStats {
    std::int64_t steps = 0;
    bool steady = false;
    double mass_defect = 0.0;          // max |1 - a - b - interior mass|
    double conserved_inner_drift = 0.0;  // drift of <P, F> with F the chain's fixation profile
    double psi_inner_drift = 0.0;        // drift of the continuum-psi functional (informational)
    double min_prob = 0.0;
};

PdeRunStats evolve_pde(const PdeParams& p, ContinuumState& state, const EvolveOptions& opt);

// psi(x) = int_0^x exp(-y^2(alpha-beta)/2 - y beta) dy, normalized to
// psi(1) = 1: the fixation-probability profile of the continuum dynamics.
double psi(double alpha, double beta, double x);

// psi at every node i/grid, by cumulative Simpson quadrature.
std::vector<double> psi_profile(double alpha, double beta, int grid);

// Closed form of psi when alpha == beta == gamma:
// (1 - exp(-gamma x)) / (1 - exp(-gamma)), continuous through gamma = 0.
double fixation_limit(double gamma, double x0);

// Asymptotic absorbed mass at x = 1 for an initial condition: psi(x0) for a
// point mass, otherwise the nested double integral of the kernel against the
// initial density.
double pi_one(double alpha, double beta, const InitialCondition& ic);

// The exactly conserved functional of the discrete stepper: the fixation
// profile of the underlying chain.  <P(t), F> is constant to rounding.
std::vector<double> conserved_profile(const PdeParams& p);

struct ConvergenceRow {
    int grid = 0;
    double absorbed_top = 0.0;   // b at the end of the run
    double target = 0.0;         // continuum limit pi_one
    double abs_error = 0.0;
    double mass_defect = 0.0;
    std::int64_t steps = 0;
    bool steady = false;
};

// Run the same initial condition across several grids to a steady state and
// report |b(inf) - pi_one| per grid.
std::vector<ConvergenceRow> convergence_harness(double alpha, double beta,
                                                const InitialCondition& ic,
                                                std::span<const int> grids,
                                                double steady_sup = 1e-9,
                                                double t_cap = 80.0,
                                                Exec policy = Exec::Auto);

// J = sum x(1-x) q(x)^2 dx over the interior nodes; its log-slope in time
// approaches -2 lambda_0 of the associated self-adjoint problem.
double interior_weighted_l2(const ContinuumState& s);

}  // namespace moranlab
