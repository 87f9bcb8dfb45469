#pragma once

#include <optional>

#include "moranlab/game.hpp"

namespace moranlab {

// Weight kernel of the invasion ordering between the mixtures q1 and q2:
//   W(y) = exp(-y^2 (q1-q2)^2 (alpha-beta)/2 - y (q1-q2)(q2 alpha + (1-q2) beta)),
// the integrand whose normalized cumulative is the fixation profile of the
// effective two-mixture game.
double dominance_kernel(const SelectionIncrements& s, double q1, double q2, double y);

enum class DominanceOutcome { SecondDominates, FirstDominates, Neither };

enum class DominanceMethod { Regions, Numeric };

struct DominanceVerdict {
    DominanceOutcome outcome = DominanceOutcome::Neither;
    bool conclusive = false;
    // min over the interior grid of (x - cumulative ratio): positive margin
    // means the second mixture invades and resists the first everywhere.
    double margin_forward = 0.0;
    double margin_reverse = 0.0;
    DominanceMethod method = DominanceMethod::Numeric;
};

// Quadrature test of "q2 dominates q1": the normalized cumulative of the
// kernel must lie strictly below the diagonal on (0,1) (checked on x_grid
// interior points); the reverse direction swaps q1 and q2.  Margins within
// neutral_margin of zero are inconclusive.
DominanceVerdict dominance_numeric(const SelectionIncrements& s, double q1, double q2,
                                   int x_grid = 1000, double neutral_margin = 1e-8);

// Sign-region classifier (six regimes in the (alpha, beta) signs with the
// pivot q* splitting the mixed-sign rows).  Empty when alpha == beta or
// either increment vanishes; callers fall back to the numeric test.
std::optional<DominanceVerdict> classify(const SelectionIncrements& s, double q1, double q2);

// The one-sided region rule: does q2 dominate q1?
bool region_dominates(const SelectionIncrements& s, double q1, double q2);

}  // namespace moranlab
