#include "moranlab/game.hpp"

#include <cmath>
#include <stdexcept>

namespace moranlab {

void validate_payoffs(const PayoffMatrix& P) {
    const double v[4] = {P.A, P.B, P.C, P.D};
    for (double x : v) {
        if (!std::isfinite(x) || x <= 0.0) {
            throw std::invalid_argument("payoffs must be finite and positive");
        }
    }
}

double mixed_payoff(const PayoffMatrix& P, double q_row, double q_col) {
    return q_row * (q_col * P.A + (1.0 - q_col) * P.B) +
           (1.0 - q_row) * (q_col * P.C + (1.0 - q_col) * P.D);
}

PayoffMatrix mixed_payoffs(const PayoffMatrix& P, double q1, double q2) {
    if (!(q1 >= 0.0 && q1 <= 1.0 && q2 >= 0.0 && q2 <= 1.0)) {
        throw std::invalid_argument("mixed strategies must lie in [0,1]");
    }
    PayoffMatrix out;
    out.A = q1 * q1 * P.A + q1 * (1.0 - q1) * (P.B + P.C) + (1.0 - q1) * (1.0 - q1) * P.D;
    out.B = q1 * q2 * P.A + q1 * (1.0 - q2) * P.B + (1.0 - q1) * q2 * P.C +
            (1.0 - q1) * (1.0 - q2) * P.D;
    out.C = q2 * q1 * P.A + q2 * (1.0 - q1) * P.B + (1.0 - q2) * q1 * P.C +
            (1.0 - q2) * (1.0 - q1) * P.D;
    out.D = q2 * q2 * P.A + q2 * (1.0 - q2) * (P.B + P.C) + (1.0 - q2) * (1.0 - q2) * P.D;
    return out;
}

SelectionIncrements effective_increments(const SelectionIncrements& s, double q1, double q2) {
    const double dq = q1 - q2;
    return {dq * (q1 * s.alpha + (1.0 - q1) * s.beta),
            dq * (q2 * s.alpha + (1.0 - q2) * s.beta)};
}

std::optional<double> q_star(const SelectionIncrements& s) {
    if (s.alpha == s.beta) return std::nullopt;
    return s.beta / (s.beta - s.alpha);
}

}  // namespace moranlab
