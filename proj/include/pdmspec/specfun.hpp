#pragma once
#include <functional>

namespace pdmspec {

// Generalized Laguerre polynomial L_n^alpha(x) by the three-term upward
// recurrence. Requires n >= 0 and alpha > -1.
double laguerre(int n, double alpha, double x);

// ln Gamma(x) for x > 0.
double log_gamma(double x);

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 15(7) quadrature on [a, b] to absolute tolerance tol.
// Throws ConvergenceError if the refinement depth cap is hit with the
// accumulated error estimate still above tol.
IntegrationResult integrate(const std::function<double(double)>& f,
                            double a, double b, double tol);

// Semi-infinite integral over [a, inf). The integrand must satisfy
// |f(x)| <= envelope_at_a * exp(-decay_rate * (x - a)) for x beyond the bulk;
// the upper limit is truncated where that envelope bound drops below tol/10.
IntegrationResult integrate_to_infinity(const std::function<double(double)>& f,
                                        double a, double decay_rate,
                                        double envelope_at_a, double tol);

} // namespace pdmspec
