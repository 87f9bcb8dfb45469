#pragma once

#include <cstdint>
#include <vector>

#include "moranlab/game.hpp"
#include "moranlab/parallel.hpp"

namespace moranlab {

// Which event is resolved first in one elementary update.
enum class UpdateRule { DeathBirth, BirthDeath };

// A two-type Moran process: N individuals, n of strategy I (the "mutant"
// count), frequency-dependent fitnesses from pairwise play against everyone
// else.  States n = 0 and n = N are absorbing.
struct MoranProcess {
    int N = 2;
    PayoffMatrix payoffs;
    UpdateRule rule = UpdateRule::DeathBirth;
};

void validate_process(const MoranProcess& p);

// Average payoff of an I-player (valid for 1 <= n <= N) and of a II-player
// (valid for 0 <= n <= N-1); each individual plays the other N-1.
double fitness_a(const MoranProcess& p, int n);
double fitness_b(const MoranProcess& p, int n);

// Relative fitness rho(n) = fitness_a / fitness_b computed in the single
// rational form ((A-B) n + B N - A) / ((C-D) n + (N-1) D); valid for
// 1 <= n <= N-1.
double relative_fitness(const MoranProcess& p, int n);

// One-step probabilities out of state n: up = P(n -> n+1),
// down = P(n -> n-1), stay = 1 - up - down.  Absorbing at n = 0, N.
struct TransitionCoefficients {
    double up = 0.0;
    double stay = 1.0;
    double down = 0.0;
};

// Direct form, written so that the mirrored process (payoffs reversed, state
// n -> N-n) produces bit-identical coefficients with up and down exchanged.
TransitionCoefficients transition_coefficients(const MoranProcess& p, int n);

// Same quantities through the factored form f * rho / g; used as an
// independent cross-check of the direct form.
TransitionCoefficients transition_coefficients_factored(const MoranProcess& p, int n);

// Dense square matrix, row-major; column j holds the distribution reached
// from state j in one step, so the matrix is column-stochastic.
struct SquareMatrix {
    int n = 0;
    std::vector<double> a;

    explicit SquareMatrix(int size = 0)
        : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// All transition coefficients of a chain, in arrays ready for the stepping
// kernel.  up[N] = down[0] = 0 so the kernel needs no bounds logic beyond
// the two boundary rows.
struct ChainCoefficients {
    int N = 0;
    std::vector<double> up, stay, down;
};

ChainCoefficients chain_coefficients(const MoranProcess& p);

// One synchronous update of the distribution: out[n] = stay[n] in[n]
// + (up[n-1] in[n-1] + down[n+1] in[n+1]).  The operand order is part of the
// contract (it makes mirrored runs bit-identical); in and out must differ.
void apply_step(const ChainCoefficients& c, const double* in, double* out,
                Exec policy = Exec::Auto);

SquareMatrix build_matrix(const MoranProcess& p);

// Distribution after `steps` elementary updates.
std::vector<double> evolve(const MoranProcess& p, std::vector<double> P0,
                           std::int64_t steps, Exec policy = Exec::Auto);

// The k-th matrix power by iterated application of the chain to each column.
SquareMatrix matrix_power(const MoranProcess& p, std::int64_t k);

// Limit of M^k by repeated squaring until successive iterates differ by less
// than tol in the max norm.  Throws on non-convergence within max_squarings.
struct PowerLimit {
    SquareMatrix limit;
    int squarings = 0;
};
PowerLimit power_limit(const MoranProcess& p, double tol = 1e-13, int max_squarings = 64);

// Fixation probabilities F_n (absorb at N starting from n), n = 0..N, via the
// backward recursion evaluated in log space; built on the factored form, so
// it shares no arithmetic with the transition matrix route.
std::vector<double> fixation_recursive(const MoranProcess& p);

// Closed-form fixation for frequency-independent selection with constant
// resident/mutant payoff ratio r (mutant has payoff 1, resident r):
//   death/birth: F_n = [(1 - r^n) + (n/N) r^(n-1) (r - 1)] / (1 - r^(N-1))
//   birth/death: F_n = (1 - r^n) / (1 - r^N)
// both reducing to n/N as r -> 1.  Evaluated through expm1 with an
// overflow-safe rearrangement for r > 1.
std::vector<double> fixation_closed_form(int N, double r, UpdateRule rule);

// Same, extracting r = C/A from a process with A == B and C == D.
std::vector<double> fixation_closed_form(const MoranProcess& p);

double inner(const std::vector<double>& u, const std::vector<double>& v);

}  // namespace moranlab
