#include "moranlab/dominance.hpp"

#include <cmath>
#include <stdexcept>

#include "moranlab/quadrature.hpp"

namespace moranlab {

double dominance_kernel(const SelectionIncrements& s, double q1, double q2, double y) {
    const double dq = q1 - q2;
    return std::exp(-0.5 * y * y * dq * dq * (s.alpha - s.beta) -
                    y * dq * (q2 * s.alpha + (1.0 - q2) * s.beta));
}

namespace {

// Smallest value of (x - cumulative ratio) over the interior grid.
double forward_margin(const SelectionIncrements& s, double q1, double q2, int x_grid) {
    const auto f = [&](double y) { return dominance_kernel(s, q1, q2, y); };
    // 4*x_grid subintervals put the cumulative nodes on a refinement of the
    // requested grid; totals at two resolutions guard the quadrature.
    const auto cum = simpson_cumulative(f, 0.0, 1.0, 4 * x_grid);
    const auto coarse = simpson_cumulative(f, 0.0, 1.0, 2 * x_grid);
    const double total = cum.back();
    if (std::abs(total - coarse.back()) > 1e-10 * std::max(1.0, std::abs(total))) {
        throw std::runtime_error("dominance_numeric: quadrature not converged");
    }
    double margin = 1.0;
    const int nodes = 2 * x_grid;  // interior cumulative nodes, x = k/nodes
    for (int k = 1; k < nodes; ++k) {
        const double x = static_cast<double>(k) / nodes;
        margin = std::min(margin, x - cum[static_cast<std::size_t>(k)] / total);
    }
    return margin;
}

}  // namespace

DominanceVerdict dominance_numeric(const SelectionIncrements& s, double q1, double q2,
                                   int x_grid, double neutral_margin) {
    if (x_grid < 8) throw std::invalid_argument("dominance_numeric: x_grid too small");
    DominanceVerdict v;
    v.method = DominanceMethod::Numeric;
    v.margin_forward = forward_margin(s, q1, q2, x_grid);
    v.margin_reverse = forward_margin(s, q2, q1, x_grid);
    if (v.margin_forward > neutral_margin) {
        v.outcome = DominanceOutcome::SecondDominates;
        v.conclusive = true;
    } else if (v.margin_reverse > neutral_margin) {
        v.outcome = DominanceOutcome::FirstDominates;
        v.conclusive = true;
    } else {
        v.outcome = DominanceOutcome::Neither;
        // Conclusively neither only when both directions are genuinely
        // violated somewhere; tiny margins both ways stay inconclusive.
        v.conclusive = (v.margin_forward < -neutral_margin && v.margin_reverse < -neutral_margin);
    }
    return v;
}

bool region_dominates(const SelectionIncrements& s, double q1, double q2) {
    const double a = s.alpha, b = s.beta;
    const auto qs = q_star(s);
    if (a > b && b > 0.0) return q2 > q1;
    if (a > 0.0 && 0.0 > b) return (q2 < q1 && q1 <= *qs) || (q2 > q1 && q1 >= *qs);
    if (0.0 > a && a > b) return q2 < q1;  // mirror of the b > a > 0 regime
    if (0.0 > b && b > a) return q2 < q1;
    if (b > 0.0 && 0.0 > a) return (q1 < q2 && q2 <= *qs) || (q1 > q2 && q2 >= *qs);
    if (b > a && a > 0.0) return q2 > q1;
    throw std::logic_error("region_dominates: degenerate increments");
}

std::optional<DominanceVerdict> classify(const SelectionIncrements& s, double q1, double q2) {
    if (s.alpha == s.beta || s.alpha == 0.0 || s.beta == 0.0) return std::nullopt;
    DominanceVerdict v;
    v.method = DominanceMethod::Regions;
    const bool fwd = region_dominates(s, q1, q2);
    const bool rev = region_dominates(s, q2, q1);
    if (fwd && rev) throw std::logic_error("classify: contradictory regions");
    v.conclusive = true;
    if (fwd) {
        v.outcome = DominanceOutcome::SecondDominates;
    } else if (rev) {
        v.outcome = DominanceOutcome::FirstDominates;
    } else {
        v.outcome = DominanceOutcome::Neither;
    }
    return v;
}

}  // namespace moranlab
