#include "pdmspec/reference.hpp"
#include "pdmspec/specfun.hpp"
#include "pdmspec/errors.hpp"
#include <cmath>
#include <algorithm>
#include <string>

namespace pdmspec {

namespace {

void validate(const KratzerParams& p) {
    if (!(p.De >= 0.0)) throw ConfigError("kratzer: De must be non-negative");
    if (!(p.ye > 0.0)) throw ConfigError("kratzer: ye must be positive");
    if (p.ell < 0) throw ConfigError("kratzer: ell must be non-negative");
    if (!(p.mu > 0.0) || !(p.hbar > 0.0)) throw ConfigError("kratzer: mu, hbar must be positive");
}

void validate(const MorseParams& p) {
    if (!(p.D > 0.0)) throw ConfigError("morse: D must be positive");
    if (!(p.a > 0.0)) throw ConfigError("morse: a must be positive");
    if (!(p.r0 > 0.0)) throw ConfigError("morse: r0 must be positive");
    if (p.ell < 0) throw ConfigError("morse: ell must be non-negative");
    if (!(p.mu > 0.0) || !(p.hbar > 0.0)) throw ConfigError("morse: mu, hbar must be positive");
}

} // namespace

double envelope_edge(const std::function<double(double)>& f, double seed,
                     int direction, double step, double ratio, double max_width) {
    if (direction != 1 && direction != -1) throw DomainError("envelope_edge: direction must be +-1");
    if (!(step > 0.0) || !(ratio > 0.0)) throw DomainError("envelope_edge: bad step or ratio");
    double peak = std::abs(f(seed));
    double x = seed;
    int below = 0;
    const int needed = 8;
    while (std::abs(x - seed) < max_width) {
        x += direction * step;
        double v = std::abs(f(x));
        peak = std::max(peak, v);
        if (peak > 0.0 && v < ratio * peak) {
            if (++below >= needed) return x;
        } else {
            below = 0;
        }
        step *= 1.05;
    }
    throw ConvergenceError("envelope_edge: no decay within max_width " + std::to_string(max_width));
}

// ---------------------------------------------------------------- Kratzer

double kratzer_gamma(const KratzerParams& p) {
    validate(p);
    double h2 = p.hbar * p.hbar;
    return 2.0 * p.mu * (p.De * p.ye * p.ye + p.ell * (p.ell + 1.0) * h2 / (2.0 * p.mu)) / h2;
}

double kratzer_eta(const KratzerParams& p) {
    return std::sqrt(1.0 + 4.0 * kratzer_gamma(p));
}

double kratzer_kappa(const KratzerParams& p, int n) {
    if (n < 0) throw DomainError("kratzer: n must be non-negative");
    double B = 4.0 * p.mu * p.De * p.ye / (p.hbar * p.hbar);
    return B / (2.0 * n + 1.0 + kratzer_eta(p));
}

double kratzer_energy(const KratzerParams& p, int n) {
    double k = kratzer_kappa(p, n);
    return p.De - p.hbar * p.hbar * k * k / (2.0 * p.mu);
}

double kratzer_potential(const KratzerParams& p, double y) {
    if (!(y > 0.0)) throw DomainError("kratzer: potential domain is y > 0");
    double r = 1.0 - p.ye / y;
    return p.De * r * r;
}

double kratzer_effective_potential(const KratzerParams& p, double y) {
    double cf = p.ell * (p.ell + 1.0) * p.hbar * p.hbar / (2.0 * p.mu * y * y);
    return kratzer_potential(p, y) + cf;
}

double kratzer_kinetic_mass(const KratzerParams& p) {
    return p.mu / (p.hbar * p.hbar);
}

namespace {

// unnormalized reduced radial function
double kratzer_u(int n, double eta, double kappa, double y) {
    if (!(y > 0.0)) return 0.0;
    return std::pow(y, 0.5 * (eta + 1.0)) * std::exp(-kappa * y) * laguerre(n, eta, 2.0 * kappa * y);
}

} // namespace

double kratzer_norm_quadrature(const KratzerParams& p, int n) {
    validate(p);
    if (n < 0) throw DomainError("kratzer: n must be non-negative");
    double eta = kratzer_eta(p);
    double kappa = kratzer_kappa(p, n);
    if (!(kappa > 0.0)) throw NoBoundStateError("kratzer: De=0 supports no bound state");
    // scale out the peak so the quadrature works on an O(1) integrand
    double ypk = (0.5 * (eta + 1.0) + n) / kappa + p.ye;
    auto uraw = [&](double y) { return kratzer_u(n, eta, kappa, y); };
    double hi = envelope_edge(uraw, ypk, 1, 0.25 / kappa, 1e-13, 1e5 / kappa);
    double peak = 0.0;
    for (int i = 1; i <= 400; ++i) peak = std::max(peak, std::abs(uraw(hi * i / 400.0)));
    auto f = [&](double y) {
        double v = uraw(y) / peak;
        return v * v;
    };
    double I = integrate(f, 0.0, hi, 1e-12 * std::max(1.0, hi)).value;
    return 1.0 / (peak * std::sqrt(I));
}

BoundState kratzer_wavefunction(const KratzerParams& p, int n) {
    double eta = kratzer_eta(p);
    double kappa = kratzer_kappa(p, n);
    double N = kratzer_norm_quadrature(p, n);
    KratzerParams pc = p;
    BoundState s;
    s.n = n;
    s.ell = p.ell;
    s.energy = kratzer_energy(p, n);
    s.provenance = Provenance::analytic;
    s.domain = {0.0, std::numeric_limits<double>::infinity()};
    s.wavefunction = [pc, n, eta, kappa, N](double y) {
        return N * kratzer_u(n, eta, kappa, y);
    };
    return s;
}

double kratzer_norm_printed(const KratzerParams& p, int n) {
    validate(p);
    if (n < 0) throw DomainError("kratzer: n must be non-negative");
    double eta = kratzer_eta(p);
    double kappa = kratzer_kappa(p, n);
    if (!(kappa > 0.0)) throw NoBoundStateError("kratzer: De=0 supports no bound state");
    double lg = log_gamma(n + 1.0) - log_gamma(n + eta + 1.0) - std::log(2.0 * n + eta + 1.0);
    return std::pow(2.0 * kappa, 1.5) * std::exp(0.5 * lg);
}

// ------------------------------------------------------------------ Morse

MorseDerived morse_derived(const MorseParams& p) {
    validate(p);
    MorseDerived d;
    d.alpha = p.a * p.r0;
    double h2 = p.hbar * p.hbar;
    d.gamma_rot = h2 * p.ell * (p.ell + 1.0) / (2.0 * p.mu * p.r0 * p.r0);
    double al = d.alpha;
    d.D0 = 1.0 - 3.0 / al + 3.0 / (al * al);
    d.D1 = 4.0 / al - 6.0 / (al * al);
    d.D2 = -1.0 / al + 3.0 / (al * al);
    double pref = 2.0 * p.mu * p.r0 * p.r0 / (h2 * al * al);
    d.eps2 = pref * (2.0 * p.D - d.gamma_rot * d.D1);
    d.eps3 = pref * (p.D + d.gamma_rot * d.D2);
    if (!(d.eps3 > 0.0))
        throw NoBoundStateError("morse: eps3 <= 0, no bound spectrum for these parameters");
    d.level_cap = d.eps2 / (2.0 * std::sqrt(d.eps3));
    return d;
}

int morse_state_count(const MorseParams& p) {
    MorseDerived d = morse_derived(p);
    if (d.level_cap <= 0.5) return 0;
    return static_cast<int>(std::ceil(d.level_cap - 0.5 - 1e-12));
}

double morse_eps1(const MorseParams& p, int n) {
    if (n < 0) throw DomainError("morse: n must be non-negative");
    MorseDerived d = morse_derived(p);
    double e1 = d.level_cap - (n + 0.5);
    if (!(e1 > 0.0))
        throw NoBoundStateError("morse: n=" + std::to_string(n) + " exceeds bound-state cap " +
                                std::to_string(d.level_cap - 0.5));
    return e1;
}

double morse_energy(const MorseParams& p, int n) {
    MorseDerived d = morse_derived(p);
    double e1 = morse_eps1(p, n);
    return d.gamma_rot * d.D0 - p.hbar * p.hbar * p.a * p.a / (2.0 * p.mu) * e1 * e1;
}

double morse_potential_pekeris(const MorseParams& p, double y) {
    MorseDerived d = morse_derived(p);
    double xi = std::exp(-d.alpha * y);
    return p.D * (xi * xi - 2.0 * xi) + d.gamma_rot * (d.D0 + d.D1 * xi + d.D2 * xi * xi);
}

double morse_potential_exact(const MorseParams& p, double y) {
    validate(p);
    if (!(y > -1.0)) throw DomainError("morse: exact centrifugal potential needs y > -1");
    double al = p.a * p.r0;
    double xi = std::exp(-al * y);
    double r = p.r0 * (1.0 + y);
    double cf = p.hbar * p.hbar * p.ell * (p.ell + 1.0) / (2.0 * p.mu * r * r);
    return p.D * (xi * xi - 2.0 * xi) + cf;
}

double morse_kinetic_mass(const MorseParams& p) {
    return p.mu * p.r0 * p.r0 / (p.hbar * p.hbar);
}

namespace {

double morse_u(const MorseDerived& d, int n, double eps1, double lag_index, double y) {
    double z = 2.0 * std::sqrt(d.eps3) * std::exp(-d.alpha * y);
    return std::exp(-d.alpha * eps1 * y - 0.5 * z) * laguerre(n, lag_index, z);
}

BoundState morse_state(const MorseParams& p, int n, bool printed_index) {
    MorseDerived d = morse_derived(p);
    double e1 = morse_eps1(p, n);
    double lag_index = printed_index ? 1.0 + 2.0 * e1 : 2.0 * e1;
    auto uraw = [d, n, e1, lag_index](double y) { return morse_u(d, n, e1, lag_index, y); };
    // locate support: double-exponential kill on the left, rate alpha*eps1 right
    double lo = envelope_edge(uraw, 0.0, -1, 0.05 / d.alpha, 1e-13, 1e4 / d.alpha);
    double hi = envelope_edge(uraw, 0.0, 1, 0.25 / (d.alpha * std::max(e1, 0.25)), 1e-13,
                              1e6 / d.alpha);
    double peak = 0.0;
    for (int i = 0; i <= 400; ++i)
        peak = std::max(peak, std::abs(uraw(lo + (hi - lo) * i / 400.0)));
    auto f = [&](double y) {
        double v = uraw(y) / peak;
        return v * v;
    };
    double I = integrate(f, lo, hi, 1e-12 * std::max(1.0, hi - lo)).value;
    double N = 1.0 / (peak * std::sqrt(I));
    BoundState s;
    s.n = n;
    s.ell = p.ell;
    s.energy = morse_energy(p, n);
    s.provenance = Provenance::analytic;
    s.wavefunction = [uraw, N](double y) { return N * uraw(y); };
    return s;
}

} // namespace

BoundState morse_wavefunction(const MorseParams& p, int n) { return morse_state(p, n, false); }

BoundState morse_wavefunction_printed_index(const MorseParams& p, int n) {
    return morse_state(p, n, true);
}

} // namespace pdmspec
