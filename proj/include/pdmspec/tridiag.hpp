#pragma once

#include <vector>

namespace pdmspec {

// Symmetric tridiagonal matrix: diag has dimension n, off has n-1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;

    int dim() const { return static_cast<int>(diag.size()); }
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;  // unit 2-norm, first antinode positive
};

// Sturm sequence sign count: eigenvalues below x, where an exact hit counts
// as below (zero pivots take the negative branch, as in LAPACK dstebz).
int sturm_count(const SymTridiag& t, double x);

// Infinity norm, used for residual scales and pivot guards.
double tridiag_norm_inf(const SymTridiag& t);

// y = T v
void tridiag_apply(const SymTridiag& t, const std::vector<double>& v,
                   std::vector<double>& y);

// ||T v - lambda v||_2 / ||v||_2
double eigenpair_residual(const SymTridiag& t, double lambda,
                          const std::vector<double>& v);

// k smallest eigenpairs, ascending. Bisection on the Sturm count brackets
// each eigenvalue, inverse iteration recovers the vector, and a closing
// Rayleigh quotient replaces the bisection value: the bisection error is
// O(eps*||T||) while the Rayleigh quotient weights the matrix by the
// eigenvector, which is exponentially small exactly where stiff PDM
// operators are large.
std::vector<EigenPair> lowest_eigenpairs(const SymTridiag& t, int k);

}  // namespace pdmspec
