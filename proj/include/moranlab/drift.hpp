#pragma once

#include <optional>

#include "moranlab/density.hpp"
#include "moranlab/game.hpp"

namespace moranlab {

// Mean payoff of the population at frequency x (positive for positive payoffs).
double mean_payoff(const PayoffMatrix& P, double x);

// Transport velocity of the selection-dominated limit:
//   vbar(x) = x(1-x)(x(A-C) + (1-x)(B-D)) / mean_payoff(x),
// the characteristic speed of dpbar/dt = -dx(vbar pbar).
double drift_velocity(const PayoffMatrix& P, double x);

// Interior rest point x* = -(B-D)/(A-B-C+D) when the velocity changes sign
// inside (0,1).
std::optional<double> interior_rest_point(const PayoffMatrix& P);

// The conserved profile of the transport equation, satisfying
// vbar * psi' = -psi:
//   psi(x) = (1-x)^(A/(A-C)) * x^(-D/(B-D)) * |x(A-B-C+D) + B-D|^s,
//   s = (DA - BC) / ((A-C)(B-D)).
// Throws std::domain_error when A == C or B == D (exponents degenerate).
double psi_drift(const PayoffMatrix& P, double x);

enum class GameClass { FirstDominates, SecondDominates, Coordination, HawkDove, Degenerate };

GameClass classify_game(const PayoffMatrix& P);

// Frequency-independent selection embedded as a game: the focal type has
// relative fitness r against a resident of fitness 1.
PayoffMatrix frequency_independent_game(double r);

struct AsymptoticMasses {
    GameClass game = GameClass::Degenerate;
    std::optional<double> x_star;
    double at_zero = 0.0;
    double at_interior = 0.0;
    double at_one = 0.0;
    // A coordination game started exactly at x* transports nothing; the
    // split of that atom is not determined by the limit.
    bool indeterminate = false;
};

// Long-time mass distribution of the transport limit for an initial
// condition supported in (0,1): everything ends at {0}, {x*}, or {1}
// according to the game class and the initial mass on each side of x*.
AsymptoticMasses asymptotic_masses(const PayoffMatrix& P, const InitialCondition& ic);

}  // namespace moranlab
