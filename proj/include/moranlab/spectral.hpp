#pragma once

#include <vector>

#include "moranlab/pde.hpp"

namespace moranlab {

// The interior dynamics transforms, via
//   w(x) = x(1-x) p(x) exp(-(beta x + (alpha-beta) x^2/2)/2),
// into the self-adjoint problem
//   -w'' + V w = lambda * omega * w,   omega(x) = 1/(x(1-x)),
// with Dirichlet ends, where
//   V(x) = (alpha-beta)/2 + (beta + (alpha-beta) x)^2 / 4.
double sl_potential(double alpha, double beta, double x);

struct EigenSystem {
    double alpha = 0.0;
    double beta = 0.0;
    int grid = 0;  // interval count; interior nodes are 1..grid-1
    bool converged = true;
    std::vector<double> lambda;              // ascending, lambda[0] is the ground mode
    std::vector<std::vector<double>> modes;  // omega-orthonormal values at interior nodes
};

// Finite-difference eigensolve at a fixed grid.
EigenSystem eigen_solve_at(double alpha, double beta, int grid, int modes);

// Grid-refined solve: doubles the grid until the ground eigenvalue moves by
// less than lambda_tol, then extracts `modes` modes at the final grid.
EigenSystem eigen_solve(double alpha, double beta, int modes = 32, double lambda_tol = 1e-8,
                        int grid0 = 256, int grid_max = 32768);

// Interior transform of a distribution snapshot: w at nodes 1..grid-1.
std::vector<double> w_transform(double alpha, double beta, const ContinuumState& s);

// Inverse transform back to an interior density q at nodes 1..grid-1.
std::vector<double> inverse_w_transform(double alpha, double beta, int grid,
                                        const std::vector<double>& w);

// Propagate an interior profile by the mode expansion:
// w(t) = sum_j exp(-lambda_j t) <w0, psi_j>_omega psi_j.
std::vector<double> spectral_evolve(const EigenSystem& sys, const std::vector<double>& w0,
                                    double t);

// Discrete omega-weighted inner product sum_i omega_i u_i v_i / grid on the
// interior nodes of the system's grid.
double omega_inner(const EigenSystem& sys, const std::vector<double>& u,
                   const std::vector<double>& v);

// Positivity witness for the ground eigenvalue in the interior-ESS regime
// (beta > 0 > alpha, xi = beta - alpha > 0): the value
//   int_A^(A+B) exp(s^2) ds,  A = -(sqrt(2)/2) beta/sqrt(xi), B = (sqrt(2)/2) sqrt(xi),
// which is strictly positive, certifying that lambda = 0 admits no
// admissible mode.
double zero_eigenvalue_witness(double beta, double xi);

}  // namespace moranlab
