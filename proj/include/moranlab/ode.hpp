#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "moranlab/game.hpp"

namespace moranlab {

// Right-hand side of the mean-path equation
//   dX/dt = X(1-X)(alpha X + beta(1-X)).
double replicator_rhs(const SelectionIncrements& s, double X);

struct OdeResult {
    double X_end = 0.0;
    std::int64_t steps = 0;   // steps of the accepted (finer) run
    int refinements = 0;      // halvings performed to meet the tolerance
};

// Classic fourth-order Runge-Kutta with step halving until two successive
// endpoint values agree within `tol`.  Trajectories may leave [0,1] by
// rounding only; excursions beyond clamp_tol abort.
OdeResult integrate_replicator(const SelectionIncrements& s, double X0, double t_end,
                               double tol = 1e-10, double clamp_tol = 1e-12,
                               const std::function<void(double, double)>& sample = {},
                               int samples = 0);

struct EquilibriumClassification {
    bool degenerate = false;  // alpha == beta == 0 or a vanishing increment pattern
    std::vector<double> stable;
    std::vector<double> unstable;
    std::optional<double> interior;  // X* when it lies in (0,1)
};

// The six sign regimes of (alpha, beta): monotone flow to one boundary, or
// bistable/coexistent flow split at X* = beta/(beta - alpha).
EquilibriumClassification classify_equilibria(const SelectionIncrements& s);

}  // namespace moranlab
