#include "moranlab/ode.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace moranlab {

double replicator_rhs(const SelectionIncrements& s, double X) {
    return X * (1.0 - X) * (s.alpha * X + s.beta * (1.0 - X));
}

namespace {

double rk4_run(const SelectionIncrements& s, double X0, double t_end, std::int64_t steps,
               double clamp_tol, const std::function<void(double, double)>& sample,
               std::int64_t sample_every) {
    const double h = t_end / static_cast<double>(steps);
    double X = X0;
    if (sample) sample(0.0, X);
    for (std::int64_t i = 0; i < steps; ++i) {
        const double k1 = replicator_rhs(s, X);
        const double k2 = replicator_rhs(s, X + 0.5 * h * k1);
        const double k3 = replicator_rhs(s, X + 0.5 * h * k2);
        const double k4 = replicator_rhs(s, X + h * k3);
        X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (X < 0.0 || X > 1.0) {
            const double excess = (X < 0.0) ? -X : X - 1.0;
            if (excess > clamp_tol) {
                throw std::runtime_error("integrate_replicator: trajectory left [0,1]");
            }
            X = (X < 0.0) ? 0.0 : 1.0;
        }
        if (sample && sample_every > 0 && ((i + 1) % sample_every == 0 || i + 1 == steps)) {
            sample(static_cast<double>(i + 1) * h, X);
        }
    }
    return X;
}

}  // namespace

OdeResult integrate_replicator(const SelectionIncrements& s, double X0, double t_end,
                               double tol, double clamp_tol,
                               const std::function<void(double, double)>& sample, int samples) {
    if (!(X0 >= 0.0 && X0 <= 1.0)) throw std::invalid_argument("X0 outside [0,1]");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
    std::int64_t steps = std::max<std::int64_t>(64, std::llround(8.0 * t_end));
    double coarse = rk4_run(s, X0, t_end, steps, clamp_tol, {}, 0);
    OdeResult res;
    for (int r = 0; r < 24; ++r) {
        const std::int64_t fine_steps = steps * 2;
        const double fine = rk4_run(s, X0, t_end, fine_steps, clamp_tol, {}, 0);
        res.refinements = r + 1;
        if (std::abs(fine - coarse) < tol) {
            steps = fine_steps;
            coarse = fine;
            break;
        }
        steps = fine_steps;
        coarse = fine;
        if (r == 23) throw std::runtime_error("integrate_replicator: no convergence");
    }
    if (sample && samples > 0) {
        const std::int64_t every = std::max<std::int64_t>(1, steps / samples);
        rk4_run(s, X0, t_end, steps, clamp_tol, sample, every);
    }
    res.X_end = coarse;
    res.steps = steps;
    return res;
}

EquilibriumClassification classify_equilibria(const SelectionIncrements& s) {
    EquilibriumClassification c;
    const double a = s.alpha, b = s.beta;
    if (a == 0.0 && b == 0.0) {
        c.degenerate = true;  // every point is an equilibrium
        return c;
    }
    if (a == b || a == 0.0 || b == 0.0) {
        c.degenerate = true;  // boundary between regimes: fall back to the flow sign
        return c;
    }
    if ((a > 0.0) == (b > 0.0)) {
        // Flow is monotone: to 1 when both increments are positive, else to 0.
        if (a > 0.0) {
            c.stable = {1.0};
            c.unstable = {0.0};
        } else {
            c.stable = {0.0};
            c.unstable = {1.0};
        }
        return c;
    }
    const double xs = *q_star(s);
    c.interior = xs;
    if (a > 0.0) {
        // alpha > 0 > beta: bistable, the interior point separates the basins.
        c.stable = {0.0, 1.0};
        c.unstable = {xs};
    } else {
        // beta > 0 > alpha: coexistence, the interior point attracts.
        c.stable = {xs};
        c.unstable = {0.0, 1.0};
    }
    return c;
}

}  // namespace moranlab
