#pragma once

#include <optional>

namespace moranlab {

// Payoffs of a symmetric two-strategy matrix game.  Row player receives
//   A against strategy I, B against strategy II   (when playing I)
//   C against strategy I, D against strategy II   (when playing II).
struct PayoffMatrix {
    double A = 1.0;
    double B = 1.0;
    double C = 1.0;
    double D = 1.0;
};

// Throws std::invalid_argument unless all payoffs are finite and positive
// (positivity is required wherever payoffs are used as reproductive rates).
void validate_payoffs(const PayoffMatrix& P);

// Weak-selection payoff increments: the game (1 + a/N, 1 + b/N, ...) played
// in a population of size N.  Only the combinations alpha = a - c and
// beta = b - d survive in the large-N limits.
struct Increments {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    double alpha() const { return a - c; }
    double beta() const { return b - d; }
};

struct SelectionIncrements {
    double alpha = 0.0;
    double beta = 0.0;
};

// Expected payoff of a q_row-mixed strategy against a q_col-mixed strategy,
// where q is the probability of playing strategy I.
double mixed_payoff(const PayoffMatrix& P, double q_row, double q_col);

// The effective 2x2 game between two mixed strategies q1 and q2: entry A~ is
// q1 against q1, B~ is q1 against q2, and so on.
PayoffMatrix mixed_payoffs(const PayoffMatrix& P, double q1, double q2);

// Effective selection increments of the game between mixed strategies q1, q2
// built from base increments (alpha, beta):
//   alpha~ = (q1 - q2)(q1 alpha + (1 - q1) beta)
//   beta~  = (q1 - q2)(q2 alpha + (1 - q2) beta)
// Identity: alpha~ - beta~ = (q1 - q2)^2 (alpha - beta).
SelectionIncrements effective_increments(const SelectionIncrements& s, double q1, double q2);

// The interior pivot q* = beta/(beta - alpha).  Empty when alpha == beta
// (degenerate: the pivot escapes to infinity / every mixture is equivalent).
// The returned value may lie outside (0,1); callers decide whether an
// interior pivot is meaningful.
std::optional<double> q_star(const SelectionIncrements& s);

}  // namespace moranlab
