#pragma once

#include <functional>
#include <vector>

#include "pdmspec/pct.hpp"
#include "pdmspec/tridiag.hpp"

namespace pdmspec {

struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_points = 3;

    double h() const { return (x_max - x_min) / (n_points - 1); }
    double node(int i) const { return x_min + i * h(); }
    int interior() const { return n_points - 2; }
};

Grid make_grid(double x_min, double x_max, int n_points);

// Interior-node Dirichlet discretization of -(1/(2 mu)) d/dx[(1/m) d/dx] + V.
// matrix has dimension n_points-2; inv_mass_half holds 1/m at the n_points-1
// half nodes so the residual of externally supplied samples can reuse the
// exact stencil, wall samples included.
struct DiscreteOperator {
    Grid grid;
    SymTridiag matrix;
    std::vector<double> inv_mass_half;
    double kinetic_mass = 1.0;
    bool symmetric = true;
};

DiscreteOperator discretize_constant_mass(
    const std::function<double(double)>& v_eff, const Grid& grid, double mu);
DiscreteOperator discretize_pdm(const TargetProblem& tp, const Grid& grid);

// Grid-normalized eigenpairs: sum v_i^2 h = 1, walls excluded.
struct GridEigenPair {
    double value = 0.0;
    std::vector<double> vector;
};
std::vector<GridEigenPair> lowest_eigenpairs(const DiscreteOperator& op, int k);

// ||H psi - E psi|| / ||psi|| in the grid norm over interior nodes; psi is
// sampled on all n_points nodes and the stencil consumes the wall samples.
double residual_norm(const DiscreteOperator& op, const std::vector<double>& psi,
                     double E);

// One reference state with its analytic energy.
struct StateSpec {
    int n = 0;
    int ell = 0;
    double energy = 0.0;
};

// A discretizable problem plus the analytic spectrum it must reproduce.
struct ProblemSpec {
    std::function<DiscreteOperator(const Grid&)> assemble;
    std::vector<StateSpec> states;
};

struct VerificationRecord {
    int n = 0;
    int ell = 0;
    double E_analytic = 0.0;
    double E_numeric = 0.0;  // finest grid
    double abs_err = 0.0;
    double rel_err = 0.0;
    double residual = 0.0;  // eigenpair residual at the finest grid
    double order = 0.0;     // finest-pair estimate vs E_analytic
    bool order_defined = false;
    bool order_ok = true;  // order in [1.7, 2.3] when defined
    std::vector<double> grid_energies;
};

struct VerificationReport {
    std::vector<int> grid_points;
    std::vector<VerificationRecord> records;
    bool all_orders_ok() const;
    double max_rel_err() const;
};

// Eigenvalues per grid plus order estimates; >= 3 grids enable the order.
VerificationReport convergence_study(const ProblemSpec& spec,
                                     const std::vector<Grid>& grids);

// Richardson extrapolation for an O(h^2) sequence; e_fine from grid spacing
// h, e_coarse from 2h.
inline double richardson2(double e_coarse, double e_fine) {
    return (4.0 * e_fine - e_coarse) / 3.0;
}
// Two levels over a 4h/2h/h triple.
inline double richardson2_twice(double e0, double e1, double e2) {
    return (16.0 * richardson2(e1, e2) - richardson2(e0, e1)) / 15.0;
}

// Residuals of the adopted Morse eigenfunction against the variant with the
// printed Laguerre index 1 + 2 eps1, both under the same constant-mass
// y-operator; reported by the audit command.
struct IndexVariantRecord {
    int n = 0;
    double residual_adopted = 0.0;
    double residual_printed = 0.0;
};
std::vector<IndexVariantRecord> morse_index_variant_residuals(
    const MorseParams& params, int n_max, const Grid& grid);

// Dirichlet box selection: expand from the state's peak until |psi| at both
// walls is below 1e-10 of the peak, clamped to the problem domain; width_cap
// bounds each side's reach from the peak (truncated set when it bites).
struct BoxResult {
    double x_min = 0.0;
    double x_max = 0.0;
    bool truncated = false;
};
BoxResult select_box(const TargetProblem& tp, int n_max, double width_cap);

}  // namespace pdmspec
