#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdmspec/errors.hpp"
#include "pdmspec/oracle.hpp"
#include "pdmspec/pct.hpp"
#include "pdmspec/reference.hpp"
#include "pdmspec/tridiag.hpp"

using namespace pdmspec;

TEST_CASE("sturm count and 3x3 closed-form eigenpairs") {
    SymTridiag t{{2.0, 2.0, 2.0}, {-1.0, -1.0}};
    CHECK(sturm_count(t, 0.0) == 0);
    CHECK(sturm_count(t, 2.0 - 1e-9) == 1);
    CHECK(sturm_count(t, 2.0) == 2);  // exact hit counts as below
    CHECK(sturm_count(t, 4.0) == 3);

    const auto pairs = lowest_eigenpairs(t, 3);
    const double r2 = std::sqrt(2.0);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].value == doctest::Approx(2.0 - r2).epsilon(1e-12));
    CHECK(pairs[1].value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pairs[2].value == doctest::Approx(2.0 + r2).epsilon(1e-12));

    // ground vector (1, sqrt2, 1)/2 with positive first antinode
    CHECK(pairs[0].vector[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(pairs[0].vector[1] == doctest::Approx(r2 / 2.0).epsilon(1e-10));
    CHECK(pairs[0].vector[2] == doctest::Approx(0.5).epsilon(1e-10));

    const double tn = tridiag_norm_inf(t);
    for (const auto& p : pairs)
        CHECK(eigenpair_residual(t, p.value, p.vector) <= 1e-10 * tn);
}

TEST_CASE("particle in a box spectrum") {
    auto zero = [](double) { return 0.0; };
    const auto op = discretize_constant_mass(zero, make_grid(0.0, 1.0, 2000), 1.0);
    const auto pairs = lowest_eigenpairs(op, 3);
    const double e1 = M_PI * M_PI / 2.0;
    CHECK(std::fabs(pairs[0].value - e1) / e1 <= 1e-6);
    CHECK(pairs[1].value / pairs[0].value == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(pairs[2].value / pairs[0].value == doctest::Approx(9.0).epsilon(1e-4));
}

TEST_CASE("harmonic oscillator eigenpairs and grid normalization") {
    auto v = [](double x) { return 0.5 * x * x; };
    const auto op = discretize_constant_mass(v, make_grid(-12.0, 12.0, 6000), 1.0);
    const auto pairs = lowest_eigenpairs(op, 3);
    CHECK(std::fabs(pairs[0].value - 0.5) <= 1e-6);
    CHECK(std::fabs(pairs[1].value - 1.5) <= 1e-5);
    CHECK(std::fabs(pairs[2].value - 2.5) <= 1e-5);

    const double h = op.grid.h();
    for (const auto& p : pairs) {
        double s = 0.0;
        for (double x : p.vector) s += x * x * h;
        CHECK(std::fabs(s - 1.0) <= 1e-12);
    }
    const double tn = tridiag_norm_inf(op.matrix);
    for (const auto& p : pairs) {
        std::vector<double> unit = p.vector;
        double nrm = 0.0;
        for (double x : unit) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : unit) x /= nrm;
        CHECK(eigenpair_residual(op.matrix, p.value, unit) <= 1e-10 * tn);
    }
}

TEST_CASE("uniform-profile discretization reduces to the constant-mass one") {
    const auto tp = compose_kratzer({1.0, 1.0, 0, 1.0, 1.0}, make_uniform());
    const Grid g = make_grid(0.0, 60.0, 500);
    const auto a = discretize_pdm(tp, g);
    const auto b = discretize_constant_mass(
        [&tp](double y) { return kratzer_effective_potential(tp.kratzer, y); },
        g, kratzer_kinetic_mass(tp.kratzer));
    REQUIRE(a.matrix.dim() == b.matrix.dim());
    for (int i = 0; i < a.matrix.dim(); ++i)
        CHECK(a.matrix.diag[i] == b.matrix.diag[i]);
    for (size_t i = 0; i < a.matrix.off.size(); ++i)
        CHECK(a.matrix.off[i] == b.matrix.off[i]);
    for (double im : a.inv_mass_half) CHECK(im == 1.0);
}

TEST_CASE("residual of analytic states falls as h^2") {
    const auto tp = compose_kratzer({1.0, 1.0, 0, 1.0, 1.0}, make_uniform());
    const auto psi = transform_wavefunction(tp, reference_state(tp, 0));
    std::vector<double> res;
    for (int np : {1000, 2000, 4000}) {
        const Grid g = make_grid(0.0, 60.0, np);
        const auto op = discretize_pdm(tp, g);
        std::vector<double> samples(np);
        for (int i = 0; i < np; ++i) samples[i] = psi.wavefunction(g.node(i));
        res.push_back(residual_norm(op, samples, psi.energy));
    }
    CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.13));
    CHECK(res[1] / res[2] == doctest::Approx(4.0).epsilon(0.13));
}

TEST_CASE("pdm oracle reproduces the kratzer spectrum on a wide physical box") {
    // lorentzian mapping stretches the support by orders of magnitude; the
    // Richardson pair over a doubled grid recovers the analytic energy.
    const auto tp = compose_kratzer({1.0, 1.0, 0, 1.0, 1.0},
                                    make_lorentzian(1.0, 1.0));
    std::vector<double> es;
    for (int np : {262144, 524288}) {
        const auto op = discretize_pdm(tp, make_grid(0.0, 18000.0, np));
        es.push_back(lowest_eigenpairs(op, 1)[0].value);
    }
    CHECK(std::fabs(richardson2(es[0], es[1]) - 0.5) <= 1e-4);
}

TEST_CASE("pdm oracle reproduces the morse spectrum under exponential mass") {
    const auto tp = compose_morse({8.0, 1.0, 1.0, 0, 1.0, 1.0},
                                  make_exponential(1.0));
    const auto op = discretize_pdm(tp, make_grid(-4.3, 3.8, 4000));
    const auto pairs = lowest_eigenpairs(op, 2);
    CHECK(std::fabs(pairs[0].value + 6.125) <= 1e-4);
    CHECK(std::fabs(pairs[1].value + 3.125) <= 1e-4);
}

TEST_CASE("convergence_study records orders and flags") {
    const auto tp = compose_morse({8.0, 1.0, 1.0, 0, 1.0, 1.0}, make_uniform());
    ProblemSpec spec;
    spec.assemble = [&tp](const Grid& g) { return discretize_pdm(tp, g); };
    spec.states.push_back({0, 0, morse_energy(tp.morse, 0)});

    const auto rep = convergence_study(
        spec, {make_grid(-2.5, 45.0, 500), make_grid(-2.5, 45.0, 1000),
               make_grid(-2.5, 45.0, 2000)});
    REQUIRE(rep.records.size() == 1);
    const auto& r = rep.records[0];
    CHECK(r.order_defined);
    CHECK(r.order == doctest::Approx(2.0).epsilon(0.05));
    CHECK(r.order_ok);
    CHECK(rep.all_orders_ok());
    CHECK(r.grid_energies.size() == 3);
    CHECK(r.E_numeric == r.grid_energies.back());
    CHECK(std::fabs(r.rel_err) <= 1e-4);

    // two grids: no order estimate
    const auto rep2 = convergence_study(
        spec, {make_grid(-2.5, 45.0, 500), make_grid(-2.5, 45.0, 1000)});
    CHECK(!rep2.records[0].order_defined);

    // a wrong target energy shows up as a broken order
    ProblemSpec bad = spec;
    bad.states[0].energy = -6.0;
    const auto rep3 = convergence_study(
        bad, {make_grid(-2.5, 45.0, 500), make_grid(-2.5, 45.0, 1000),
              make_grid(-2.5, 45.0, 2000)});
    CHECK(!rep3.records[0].order_ok);
    CHECK(!rep3.all_orders_ok());
}

TEST_CASE("richardson extrapolation closed forms") {
    // e(h) = E + c h^2 is killed exactly
    auto e = [](double h) { return 3.0 + 0.7 * h * h; };
    CHECK(richardson2(e(0.2), e(0.1)) == doctest::Approx(3.0).epsilon(1e-14));
    auto e4 = [](double h) { return 3.0 + 0.7 * h * h + 0.2 * h * h * h * h; };
    CHECK(richardson2_twice(e4(0.4), e4(0.2), e4(0.1)) ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("select_box encloses support and honors walls") {
    const auto tp = compose_kratzer({16.0, 1.0, 0, 1.0, 1.0},
                                    make_lorentzian(2.0, 1.0));
    const auto box = select_box(tp, 0, 1e4);
    CHECK(!box.truncated);
    CHECK(box.x_min == 0.0);  // domain wall is exact
    CHECK(box.x_max > 5.0);
    CHECK(box.x_max < 60.0);

    // slow lorentzian decay for a shallow well: the cap bites
    const auto wide = compose_kratzer({1.0, 1.0, 0, 1.0, 1.0},
                                      make_lorentzian(1.0, 1.0));
    const auto capped = select_box(wide, 0, 1e4);
    CHECK(capped.truncated);
    CHECK(capped.x_max <= 1e4 + 10.0);

    const auto tpm = compose_morse({8.0, 1.0, 1.0, 0, 1.0, 1.0},
                                   make_exponential(1.0));
    const auto mb = select_box(tpm, 1, 1e4);
    CHECK(!mb.truncated);
    CHECK(mb.x_min < -4.0);
    CHECK(mb.x_max > 2.0);
}

TEST_CASE("box doubling leaves the eigenvalue fixed") {
    const auto tp = compose_morse({8.0, 1.0, 1.0, 0, 1.0, 1.0}, make_uniform());
    const Grid g1 = make_grid(-2.5, 45.0, 2000);
    // widen by whole steps so both grids share h exactly and the difference
    // isolates the box truncation
    const double h = g1.h();
    const int k = 42, m = 1894;  // about 1 and 45 in units of h
    const Grid g2 =
        make_grid(-2.5 - k * h, 45.0 + m * h, 2000 + k + m);
    const double e1 = lowest_eigenpairs(discretize_pdm(tp, g1), 1)[0].value;
    const double e2 = lowest_eigenpairs(discretize_pdm(tp, g2), 1)[0].value;
    CHECK(std::fabs(e1 - e2) <= 1e-8);
}

TEST_CASE("grid and input validation") {
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 2), ConfigError);
    CHECK_THROWS_AS(make_grid(1.0, 1.0, 100), ConfigError);
    CHECK_THROWS_AS(make_grid(2.0, 1.0, 100), ConfigError);

    auto v = [](double x) { return 1.0 / x; };
    CHECK_THROWS_AS(discretize_constant_mass(v, make_grid(-1.0, 1.0, 3), 1.0),
                    DomainError);
    CHECK_THROWS_AS(
        discretize_constant_mass([](double) { return 0.0; },
                                 make_grid(0.0, 1.0, 100), 0.0),
        ConfigError);

    // grid outside the composition's domain
    const auto tp = compose_kratzer({1.0, 1.0, 0, 1.0, 1.0},
                                    make_lorentzian(1.0, 1.0));
    CHECK_THROWS_AS(discretize_pdm(tp, make_grid(-5.0, 10.0, 100)), DomainError);

    const auto op = discretize_pdm(tp, make_grid(0.0, 30.0, 100));
    std::vector<double> wrong(99, 0.0);
    CHECK_THROWS_AS(residual_norm(op, wrong, 0.5), ConfigError);
}
