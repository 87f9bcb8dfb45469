#pragma once

#include <vector>

namespace moranlab {

// Symmetric tridiagonal matrix: diag has m entries, off has m-1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count_below(const SymTridiag& T, double x);

// The k smallest eigenvalues, ascending, by Gershgorin bracketing and
// bisection on the Sturm count.
std::vector<double> lowest_eigenvalues(const SymTridiag& T, int k);

// Unit 2-norm eigenvector for an eigenvalue estimate, by shifted inverse
// iteration with a partially pivoted tridiagonal solve.  The sign is fixed so
// the entry of largest magnitude is positive.
std::vector<double> inverse_iteration(const SymTridiag& T, double lambda);

// Solve a general tridiagonal system (Thomas algorithm, no pivoting; the
// caller must supply a diagonally dominant or otherwise safely factorizable
// system).  lower/upper have n-1 entries.
std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 std::vector<double> rhs);

}  // namespace moranlab
