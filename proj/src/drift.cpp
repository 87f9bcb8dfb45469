#include "moranlab/drift.hpp"

#include <cmath>
#include <stdexcept>

#include "moranlab/quadrature.hpp"

namespace moranlab {

double mean_payoff(const PayoffMatrix& P, double x) {
    return x * x * (P.A - P.B - P.C + P.D) + x * (P.B + P.C - 2.0 * P.D) + P.D;
}

double drift_velocity(const PayoffMatrix& P, double x) {
    return x * (1.0 - x) * (x * (P.A - P.C) + (1.0 - x) * (P.B - P.D)) / mean_payoff(P, x);
}

std::optional<double> interior_rest_point(const PayoffMatrix& P) {
    const double sA = P.A - P.C;
    const double sB = P.B - P.D;
    if (sA == 0.0 || sB == 0.0 || (sA > 0.0) == (sB > 0.0)) return std::nullopt;
    return -sB / (sA - sB);  // equivalently -(B-D)/(A-B-C+D)
}

double psi_drift(const PayoffMatrix& P, double x) {
    const double sA = P.A - P.C;
    const double sB = P.B - P.D;
    if (sA == 0.0 || sB == 0.0) {
        throw std::domain_error("psi_drift: degenerate exponents (A == C or B == D)");
    }
    const double e_one = P.A / sA;
    const double e_zero = -P.D / sB;
    const double e_mid = (P.D * P.A - P.B * P.C) / (sA * sB);
    const double g = x * (P.A - P.B - P.C + P.D) + (P.B - P.D);
    return std::pow(1.0 - x, e_one) * std::pow(x, e_zero) * std::pow(std::abs(g), e_mid);
}

GameClass classify_game(const PayoffMatrix& P) {
    validate_payoffs(P);
    const double sA = P.A - P.C;
    const double sB = P.B - P.D;
    if (sA == 0.0 && sB == 0.0) return GameClass::Degenerate;
    if (sA >= 0.0 && sB >= 0.0) return GameClass::FirstDominates;
    if (sA <= 0.0 && sB <= 0.0) return GameClass::SecondDominates;
    if (sA > 0.0) return GameClass::Coordination;  // pushed outward from x*
    return GameClass::HawkDove;                    // pulled into x*
}

PayoffMatrix frequency_independent_game(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("relative fitness must be positive");
    return PayoffMatrix{r, r, 1.0, 1.0};
}

AsymptoticMasses asymptotic_masses(const PayoffMatrix& P, const InitialCondition& ic) {
    AsymptoticMasses out;
    out.game = classify_game(P);
    out.x_star = interior_rest_point(P);
    switch (out.game) {
        case GameClass::Degenerate:
            out.indeterminate = true;
            return out;
        case GameClass::FirstDominates:
            out.at_one = 1.0;
            return out;
        case GameClass::SecondDominates:
            out.at_zero = 1.0;
            return out;
        case GameClass::HawkDove:
            out.at_interior = 1.0;
            return out;
        case GameClass::Coordination:
            break;
    }
    const double xs = *out.x_star;
    if (ic.kind() == InitialCondition::Kind::Delta) {
        const double x0 = ic.delta_position();
        if (x0 == xs) {
            out.indeterminate = true;
        } else if (x0 < xs) {
            out.at_zero = 1.0;
        } else {
            out.at_one = 1.0;
        }
        return out;
    }
    const auto dens = [&](double x) { return ic.density_at(x); };
    const auto below = simpson_doubling(dens, 0.0, xs, 1e-12);
    const auto above = simpson_doubling(dens, xs, 1.0, 1e-12);
    const double total = below.value + above.value;
    if (!(total > 0.0)) throw std::invalid_argument("density vanishes");
    out.at_zero = below.value / total;
    out.at_one = above.value / total;
    return out;
}

}  // namespace moranlab
