#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdmspec/errors.hpp"
#include "pdmspec/reference.hpp"
#include "pdmspec/specfun.hpp"

using namespace pdmspec;

namespace {

int count_nodes(const BoundState& st, double lo, double hi, int samples) {
    int nodes = 0;
    double prev = 0.0;
    double peak = 0.0;
    std::vector<double> vals(samples);
    for (int i = 0; i < samples; ++i) {
        vals[i] = st.wavefunction(lo + (hi - lo) * i / (samples - 1));
        peak = std::max(peak, std::fabs(vals[i]));
    }
    for (double v : vals) {
        if (std::fabs(v) < 1e-8 * peak) continue;
        if (prev != 0.0 && v * prev < 0.0) ++nodes;
        prev = v;
    }
    return nodes;
}

}  // namespace

TEST_CASE("kratzer derived quantities and spectrum") {
    KratzerParams p{1.0, 1.0, 0, 1.0, 1.0};
    CHECK(kratzer_gamma(p) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(kratzer_eta(p) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(kratzer_kappa(p, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kratzer_energy(p, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kratzer_energy(p, 1) == doctest::Approx(7.0 / 9.0).epsilon(1e-14));
    CHECK(kratzer_energy(p, 2) == doctest::Approx(0.875).epsilon(1e-14));

    KratzerParams p1{1.0, 1.0, 1, 1.0, 1.0};
    CHECK(kratzer_energy(p1, 0) ==
          doctest::Approx((7.0 + std::sqrt(17.0)) / 16.0).epsilon(1e-14));

    // spectrum increasing toward De, strictly below it
    KratzerParams p16{16.0, 1.0, 2, 1.0, 1.0};
    double prev = -1.0;
    for (int n = 0; n < 8; ++n) {
        const double e = kratzer_energy(p16, n);
        CHECK(e > prev);
        CHECK(e < p16.De);
        prev = e;
    }
}

TEST_CASE("kratzer De=0 collapses to zero energies") {
    KratzerParams p{0.0, 1.0, 0, 1.0, 1.0};
    for (int n = 0; n < 4; ++n) CHECK(kratzer_energy(p, n) == 0.0);
    CHECK_THROWS_AS(kratzer_wavefunction(p, 0), NoBoundStateError);
}

TEST_CASE("kratzer potential shape") {
    KratzerParams p{2.0, 1.5, 0, 1.0, 1.0};
    CHECK(kratzer_potential(p, 1.5) == 0.0);
    CHECK(kratzer_potential(p, 3.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kratzer_potential(p, 0.1) > 100.0);
    CHECK_THROWS_AS(kratzer_potential(p, 0.0), DomainError);
    CHECK_THROWS_AS(kratzer_potential(p, -1.0), DomainError);

    KratzerParams pl{2.0, 1.5, 1, 1.0, 1.0};
    CHECK(kratzer_effective_potential(pl, 2.0) ==
          doctest::Approx(kratzer_potential(pl, 2.0) + 1.0 / 4.0)
              .epsilon(1e-14));
}

TEST_CASE("kratzer wavefunction: normalization, nodes, orthogonality") {
    KratzerParams p{1.0, 1.0, 0, 1.0, 1.0};
    for (int n = 0; n < 3; ++n) {
        const auto st = kratzer_wavefunction(p, n);
        CHECK(st.n == n);
        auto f = [&st](double y) {
            const double u = st.wavefunction(y);
            return u * u;
        };
        CHECK(std::fabs(integrate(f, 1e-10, 80.0, 1e-11).value - 1.0) <= 1e-8);
        CHECK(count_nodes(st, 0.01, 60.0, 4000) == n);
    }
    const auto s0 = kratzer_wavefunction(p, 0);
    const auto s1 = kratzer_wavefunction(p, 1);
    auto cross = [&](double y) { return s0.wavefunction(y) * s1.wavefunction(y); };
    CHECK(std::fabs(integrate(cross, 1e-10, 80.0, 1e-11).value) <= 1e-8);
}

TEST_CASE("kratzer printed normalization constant vs quadrature") {
    // The closed-form constant disagrees with the quadrature one; the
    // wavefunctions are normalized by quadrature, this records the gap.
    KratzerParams p{1.0, 1.0, 0, 1.0, 1.0};
    CHECK(kratzer_norm_printed(p, 0) / kratzer_norm_quadrature(p, 0) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(kratzer_norm_printed(p, 1) / kratzer_norm_quadrature(p, 1) ==
          doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("kratzer kinetic mass") {
    KratzerParams p{1.0, 1.0, 0, 2.0, 3.0};
    CHECK(kratzer_kinetic_mass(p) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("morse l=0 matches the textbook closed form") {
    MorseParams p{8.0, 1.0, 1.0, 0, 1.0, 1.0};
    for (int n = 0; n < 4; ++n) {
        const double w = p.a * std::sqrt(2.0 * p.D / p.mu) * p.hbar;
        const double textbook = -p.D + w * (n + 0.5) -
                                p.hbar * p.hbar * p.a * p.a / (2.0 * p.mu) *
                                    (n + 0.5) * (n + 0.5);
        CHECK(std::fabs(morse_energy(p, n) - textbook) <=
              1e-12 * std::fabs(textbook));
    }
    CHECK(morse_energy(p, 0) == doctest::Approx(-6.125).epsilon(1e-14));
    CHECK(morse_energy(p, 1) == doctest::Approx(-3.125).epsilon(1e-14));
    CHECK(morse_state_count(p) == 4);
    CHECK_THROWS_AS(morse_energy(p, 4), NoBoundStateError);
}

TEST_CASE("morse rotational coefficients and spectrum") {
    MorseParams p{8.0, 1.0, 1.0, 1, 1.0, 1.0};
    const auto d = morse_derived(p);
    CHECK(d.alpha == 1.0);
    CHECK(d.gamma_rot == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.D0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.D1 == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(d.D2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d.eps2 == doctest::Approx(36.0).epsilon(1e-14));
    CHECK(d.eps3 == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(d.level_cap == doctest::Approx(9.0 / std::sqrt(5.0)).epsilon(1e-14));

    const double e1 = 9.0 / std::sqrt(5.0) - 0.5;
    CHECK(morse_eps1(p, 0) == doctest::Approx(e1).epsilon(1e-14));
    CHECK(morse_energy(p, 0) ==
          doctest::Approx(1.0 - 0.5 * e1 * e1).epsilon(1e-14));
    CHECK(morse_energy(p, 0) ==
          doctest::Approx(-5.21253882025).epsilon(1e-11));

    MorseParams p2{8.0, 1.0, 1.0, 2, 1.0, 1.0};
    CHECK(morse_energy(p2, 0) ==
          doctest::Approx(-3.689052541306).epsilon(1e-11));
}

TEST_CASE("morse level spacing shrinks with n") {
    MorseParams p{8.0, 1.0, 1.0, 0, 1.0, 1.0};
    double prev_gap = 1e300;
    for (int n = 0; n + 1 < morse_state_count(p); ++n) {
        const double gap = morse_energy(p, n + 1) - morse_energy(p, n);
        CHECK(gap > 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("morse potentials") {
    MorseParams p{8.0, 1.0, 1.0, 0, 1.0, 1.0};
    CHECK(morse_potential_pekeris(p, 0.0) == doctest::Approx(-8.0).epsilon(1e-14));
    // exact and Pekeris coincide at l=0
    for (double y : {-0.5, 0.0, 1.0, 3.0})
        CHECK(morse_potential_exact(p, y) ==
              doctest::Approx(morse_potential_pekeris(p, y)).epsilon(1e-13));
    CHECK_THROWS_AS(morse_potential_exact(p, -1.0), DomainError);

    MorseParams pl{8.0, 1.0, 1.0, 1, 1.0, 1.0};
    // exact centrifugal: hbar^2 l(l+1)/(2 mu r0^2 (1+y)^2)
    CHECK(morse_potential_exact(pl, 1.0) ==
          doctest::Approx(morse_potential_pekeris(p, 1.0) + 0.25).epsilon(1e-13));
}

TEST_CASE("morse wavefunction: normalization, nodes, orthogonality") {
    MorseParams p{8.0, 1.0, 1.0, 0, 1.0, 1.0};
    for (int n = 0; n < 3; ++n) {
        const auto st = morse_wavefunction(p, n);
        auto f = [&st](double y) {
            const double u = st.wavefunction(y);
            return u * u;
        };
        CHECK(std::fabs(integrate(f, -3.0, 50.0, 1e-11).value - 1.0) <= 1e-8);
        CHECK(count_nodes(st, -2.0, 30.0, 4000) == n);
    }
    const auto s0 = morse_wavefunction(p, 0);
    const auto s2 = morse_wavefunction(p, 2);
    auto cross = [&](double y) { return s0.wavefunction(y) * s2.wavefunction(y); };
    CHECK(std::fabs(integrate(cross, -3.0, 50.0, 1e-11).value) <= 1e-8);
}

TEST_CASE("morse shallow well has no bound spectrum beyond the cap") {
    MorseParams p{0.02, 1.0, 1.0, 0, 1.0, 1.0};
    // cap = sqrt(2 D)/1 = 0.2, so even n=0 is unbound
    CHECK(morse_state_count(p) == 0);
    CHECK_THROWS_AS(morse_energy(p, 0), NoBoundStateError);
    CHECK_THROWS_AS(morse_wavefunction(p, 0), NoBoundStateError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(kratzer_energy({1.0, 0.0, 0, 1.0, 1.0}, 0), ConfigError);
    CHECK_THROWS_AS(kratzer_energy({-1.0, 1.0, 0, 1.0, 1.0}, 0), ConfigError);
    CHECK_THROWS_AS(kratzer_energy({1.0, 1.0, -1, 1.0, 1.0}, 0), ConfigError);
    CHECK_THROWS_AS(morse_energy({0.0, 1.0, 1.0, 0, 1.0, 1.0}, 0), ConfigError);
    CHECK_THROWS_AS(morse_energy({8.0, -1.0, 1.0, 0, 1.0, 1.0}, 0), ConfigError);
    CHECK_THROWS_AS(kratzer_energy({1.0, 1.0, 0, 1.0, 1.0}, -1), DomainError);
}

TEST_CASE("envelope_edge finds decay edges") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    const double edge = envelope_edge(gauss, 0.0, +1, 0.25, 1e-10, 100.0);
    CHECK(edge > 4.5);
    CHECK(edge < 40.0);
    CHECK_THROWS_AS(envelope_edge([](double) { return 1.0; }, 0.0, +1, 0.5,
                                  1e-10, 50.0),
                    ConvergenceError);
}
