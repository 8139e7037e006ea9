#pragma once
#include <functional>
#include "pdmspec/mass_profile.hpp"

namespace pdmspec {

enum class Provenance { analytic, numeric };

struct BoundState {
    int n = 0;
    int ell = 0;
    double energy = 0.0;
    std::function<double(double)> wavefunction; // normalized amplitude
    Provenance provenance = Provenance::analytic;
    Interval domain;
};

// ---------------------------------------------------------------- Kratzer

struct KratzerParams {
    double De;
    double ye;
    int ell = 0;
    double mu = 1.0;
    double hbar = 1.0;
};

double kratzer_gamma(const KratzerParams& p);   // 2mu(De ye^2 + l(l+1)hbar^2/2mu)/hbar^2
double kratzer_eta(const KratzerParams& p);     // sqrt(1+4gamma)
double kratzer_kappa(const KratzerParams& p, int n);
double kratzer_energy(const KratzerParams& p, int n);

// Bare potential De(1 - ye/y)^2 and the effective radial potential with the
// centrifugal term added.
double kratzer_potential(const KratzerParams& p, double y);
double kratzer_effective_potential(const KratzerParams& p, double y);

// Reduced radial eigenfunction u(y) = N y^{(eta+1)/2} e^{-kappa y} L_n^eta(2 kappa y),
// N fixed by quadrature so int_0^inf u^2 dy = 1.
BoundState kratzer_wavefunction(const KratzerParams& p, int n);

// The printed closed-form normalization constant, evaluated via log_gamma;
// audited against the quadrature constant, never used as ground truth.
double kratzer_norm_printed(const KratzerParams& p, int n);
// The quadrature normalization constant itself (1/sqrt of the norm integral
// of the unnormalized u).
double kratzer_norm_quadrature(const KratzerParams& p, int n);

// Mass in front of -d^2/dy^2 when the radial equation is written
// -(1/2m) u'' + V u = E u, i.e. mu/hbar^2.
double kratzer_kinetic_mass(const KratzerParams& p);

// ------------------------------------------------------------------ Morse

struct MorseParams {
    double D;
    double a;
    double r0 = 1.0;
    int ell = 0;
    double mu = 1.0;
    double hbar = 1.0;
};

struct MorseDerived {
    double alpha;      // a*r0
    double gamma_rot;  // hbar^2 l(l+1) / (2 mu r0^2)
    double D0, D1, D2; // Pekeris coefficients
    double eps2, eps3; // positive-sign convention
    double level_cap;  // eps2 / (2 sqrt(eps3)); bound states need n + 1/2 < cap
};

MorseDerived morse_derived(const MorseParams& p);
int morse_state_count(const MorseParams& p);
double morse_eps1(const MorseParams& p, int n);
double morse_energy(const MorseParams& p, int n);

// Pekeris-approximated potential in the dimensionless displacement y = (r-r0)/r0.
double morse_potential_pekeris(const MorseParams& p, double y);
// Exact potential: Morse well plus the true centrifugal term (domain y > -1).
double morse_potential_exact(const MorseParams& p, double y);

// u(y) = N e^{-alpha eps1 y} e^{-z/2} L_n^{2 eps1}(z), z = 2 sqrt(eps3) e^{-alpha y},
// normalized by quadrature over the full line.
BoundState morse_wavefunction(const MorseParams& p, int n);
// Variant with the printed Laguerre index 1 + 2 eps1, for the audit's residual
// comparison only.
BoundState morse_wavefunction_printed_index(const MorseParams& p, int n);

// Mass in front of -d^2/dy^2 for the y-equation: mu r0^2 / hbar^2.
double morse_kinetic_mass(const MorseParams& p);

// -------------------------------------------------------------- utilities

// Walk outward from seed in +1/-1 direction until the trailing envelope of |f|
// drops below ratio * (running peak); returns the accepted edge coordinate.
// Throws ConvergenceError if the walk exceeds max_width.
double envelope_edge(const std::function<double(double)>& f, double seed,
                     int direction, double step, double ratio, double max_width);

} // namespace pdmspec
