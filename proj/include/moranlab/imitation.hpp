#pragma once

#include <functional>

#include "moranlab/moran.hpp"
#include "moranlab/pde.hpp"

namespace moranlab {

// Pairwise imitation: a focal individual copies a randomly met neighbour
// with probability response(payoff difference).  response must map into
// [0,1]; response(0) and response'(0) are carried explicitly because only
// they survive in the continuum limit.
struct ImitationKernel {
    std::function<double(double)> response;
    double at_zero = 0.5;
    double slope_at_zero = 0.25;
};

// Logistic (Fermi-like) kernel with value p0 at zero payoff difference and
// slope s0 there: response(u) = 1 / (1 + ((1-p0)/p0) exp(-u s0/(p0(1-p0)))).
ImitationKernel fermi_kernel(double p0 = 0.5, double s0 = 0.25);

// One-step probabilities of the imitation chain:
//   up(n)   = ((N-n)/N) (n/(N-1)) response(phi_a - phi_b)
//   down(n) = (n/N) ((N-n)/(N-1)) response(phi_b - phi_a)
// Throws if the kernel leaves [0,1].
TransitionCoefficients imitation_coefficients(const MoranProcess& p, const ImitationKernel& k,
                                              int n);

ChainCoefficients imitation_chain_coefficients(const MoranProcess& p, const ImitationKernel& k);

// The two numbers the continuum limit keeps: diffusion scale response(0) and
// drift scale 2 response'(0).
struct ContinuumScales {
    double diffusion = 1.0;
    double drift = 1.0;
};

ContinuumScales continuum_coefficients(const ImitationKernel& k);

// The imitation limit is the standard dynamics with increments scaled by
// mu = drift/diffusion and time dilated by the diffusion scale.  Throws when
// the diffusion scale vanishes (purely drift-driven motion has no such
// reduction).
PdeParams imitation_pde_params(const SelectionIncrements& s, const ImitationKernel& k, int grid);

// Physical-to-internal time factor: the standard solver runs to
// tau = diffusion * t when the imitation system runs to t.
double imitation_time_scale(const ImitationKernel& k);

// Conserved profile of the imitation limit: psi with the rescaled increments.
double imitation_conserved(const SelectionIncrements& s, const ImitationKernel& k, double x);

}  // namespace moranlab
