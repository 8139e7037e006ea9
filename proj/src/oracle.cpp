#include "pdmspec/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pdmspec/errors.hpp"
#include "pdmspec/reference.hpp"

namespace pdmspec {

namespace {

constexpr double kOverflowGuard = 1e100;

void check_grid(const Grid& g) {
    if (g.n_points < 3) throw ConfigError("grid: need at least 3 points");
    if (!(g.x_max > g.x_min)) throw ConfigError("grid: x_max must exceed x_min");
    if (!std::isfinite(g.x_min) || !std::isfinite(g.x_max))
        throw ConfigError("grid: bounds must be finite");
}

}  // namespace

Grid make_grid(double x_min, double x_max, int n_points) {
    Grid g{x_min, x_max, n_points};
    check_grid(g);
    return g;
}

DiscreteOperator discretize_constant_mass(
    const std::function<double(double)>& v_eff, const Grid& grid, double mu) {
    check_grid(grid);
    if (!(mu > 0.0)) throw ConfigError("discretize: mu must be positive");
    const int ni = grid.interior();
    const double h = grid.h();
    const double c = 1.0 / (2.0 * mu * h * h);

    DiscreteOperator op;
    op.grid = grid;
    op.kinetic_mass = mu;
    op.inv_mass_half.assign(grid.n_points - 1, 1.0);
    op.matrix.diag.resize(ni);
    op.matrix.off.assign(ni - 1, -c);
    for (int i = 0; i < ni; ++i) {
        const double v = v_eff(grid.node(i + 1));
        if (!std::isfinite(v) || std::fabs(v) > kOverflowGuard)
            throw DomainError("discretize: singular potential at an interior node");
        op.matrix.diag[i] = 2.0 * c + v;
    }
    return op;
}

DiscreteOperator discretize_pdm(const TargetProblem& tp, const Grid& grid) {
    check_grid(grid);
    const int n = grid.n_points;
    const double h = grid.h();
    // Walls may sit on the closure of the open domain (Dirichlet rows never
    // evaluate the potential there); interior nodes must be strictly inside.
    if (!tp.x_domain.contains(grid.node(1)) ||
        !tp.x_domain.contains(grid.node(n - 2)) ||
        grid.x_min < tp.x_domain.lo || grid.x_max > tp.x_domain.hi)
        throw DomainError("discretize: grid exits the target domain");

    const double mu_k = target_kinetic_mass(tp);
    const double c = 1.0 / (2.0 * mu_k * h * h);

    DiscreteOperator op;
    op.grid = grid;
    op.kinetic_mass = mu_k;
    op.inv_mass_half.resize(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        const double m = tp.profile->mass(grid.x_min + (i + 0.5) * h);
        if (!(m > 0.0))
            throw DomainError("discretize: non-positive mass at a half node");
        op.inv_mass_half[i] = 1.0 / m;
    }

    const int ni = grid.interior();
    op.matrix.diag.resize(ni);
    op.matrix.off.resize(ni - 1);
    for (int i = 0; i < ni; ++i) {
        const double v = target_effective_potential(tp, grid.node(i + 1));
        if (!std::isfinite(v) || std::fabs(v) > kOverflowGuard)
            throw DomainError("discretize: singular potential at an interior node");
        op.matrix.diag[i] =
            c * (op.inv_mass_half[i] + op.inv_mass_half[i + 1]) + v;
        if (i + 1 < ni) op.matrix.off[i] = -c * op.inv_mass_half[i + 1];
    }
    return op;
}

std::vector<GridEigenPair> lowest_eigenpairs(const DiscreteOperator& op,
                                             int k) {
    const auto pairs = lowest_eigenpairs(op.matrix, k);
    const double s = 1.0 / std::sqrt(op.grid.h());
    std::vector<GridEigenPair> out(pairs.size());
    for (size_t j = 0; j < pairs.size(); ++j) {
        out[j].value = pairs[j].value;
        out[j].vector = pairs[j].vector;
        for (double& x : out[j].vector) x *= s;
    }
    return out;
}

double residual_norm(const DiscreteOperator& op, const std::vector<double>& psi,
                     double E) {
    const int n = op.grid.n_points;
    if (static_cast<int>(psi.size()) != n)
        throw ConfigError("residual_norm: sample count does not match the grid");
    const double h = op.grid.h();
    const double c = 1.0 / (2.0 * op.kinetic_mass * h * h);
    double num = 0.0, den = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double flux_r = op.inv_mass_half[i] * (psi[i + 1] - psi[i]);
        const double flux_l = op.inv_mass_half[i - 1] * (psi[i] - psi[i - 1]);
        const double v = op.matrix.diag[i - 1] -
                         c * (op.inv_mass_half[i - 1] + op.inv_mass_half[i]);
        const double hpsi = -c * (flux_r - flux_l) + v * psi[i];
        const double r = hpsi - E * psi[i];
        num += r * r;
        den += psi[i] * psi[i];
    }
    if (!(den > 0.0)) throw ConfigError("residual_norm: zero sample vector");
    return std::sqrt(num / den);
}

bool VerificationReport::all_orders_ok() const {
    for (const auto& r : records)
        if (r.order_defined && !r.order_ok) return false;
    return true;
}

double VerificationReport::max_rel_err() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, std::fabs(r.rel_err));
    return m;
}

VerificationReport convergence_study(const ProblemSpec& spec,
                                     const std::vector<Grid>& grids) {
    if (grids.empty()) throw ConfigError("convergence_study: no grids");
    if (spec.states.empty()) throw ConfigError("convergence_study: no states");
    const int k = static_cast<int>(spec.states.size());

    VerificationReport report;
    std::vector<std::vector<double>> energies(grids.size());
    DiscreteOperator finest;
    std::vector<GridEigenPair> finest_pairs;
    for (size_t gi = 0; gi < grids.size(); ++gi) {
        DiscreteOperator op = spec.assemble(grids[gi]);
        auto pairs = lowest_eigenpairs(op, k);
        energies[gi].resize(k);
        for (int j = 0; j < k; ++j) energies[gi][j] = pairs[j].value;
        report.grid_points.push_back(grids[gi].n_points);
        if (gi + 1 == grids.size()) {
            finest = std::move(op);
            finest_pairs = std::move(pairs);
        }
    }

    const bool order_defined = grids.size() >= 3;
    for (int j = 0; j < k; ++j) {
        VerificationRecord rec;
        rec.n = spec.states[j].n;
        rec.ell = spec.states[j].ell;
        rec.E_analytic = spec.states[j].energy;
        rec.E_numeric = energies.back()[j];
        rec.abs_err = rec.E_numeric - rec.E_analytic;
        const double scale = std::max(std::fabs(rec.E_analytic), 1e-300);
        rec.rel_err = rec.abs_err / scale;
        rec.residual = eigenpair_residual(finest.matrix, finest_pairs[j].value,
                                          finest_pairs[j].vector);
        for (size_t gi = 0; gi < grids.size(); ++gi)
            rec.grid_energies.push_back(energies[gi][j]);
        rec.order_defined = order_defined;
        if (order_defined) {
            const size_t g = grids.size() - 1;
            const double err_coarse =
                std::fabs(energies[g - 1][j] - rec.E_analytic);
            const double err_fine =
                std::max(std::fabs(energies[g][j] - rec.E_analytic), 1e-300);
            rec.order = std::log2(err_coarse / err_fine);
            rec.order_ok = rec.order >= 1.7 && rec.order <= 2.3;
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

std::vector<IndexVariantRecord> morse_index_variant_residuals(
    const MorseParams& params, int n_max, const Grid& grid) {
    auto pot = [&params](double y) { return morse_potential_pekeris(params, y); };
    const DiscreteOperator op =
        discretize_constant_mass(pot, grid, morse_kinetic_mass(params));

    std::vector<IndexVariantRecord> out;
    for (int n = 0; n <= n_max; ++n) {
        const BoundState adopted = morse_wavefunction(params, n);
        const BoundState printed = morse_wavefunction_printed_index(params, n);
        std::vector<double> sa(grid.n_points), sp(grid.n_points);
        for (int i = 0; i < grid.n_points; ++i) {
            sa[i] = adopted.wavefunction(grid.node(i));
            sp[i] = printed.wavefunction(grid.node(i));
        }
        IndexVariantRecord rec;
        rec.n = n;
        rec.residual_adopted = residual_norm(op, sa, adopted.energy);
        rec.residual_printed = residual_norm(op, sp, printed.energy);
        out.push_back(rec);
    }
    return out;
}

BoxResult select_box(const TargetProblem& tp, int n_max, double width_cap) {
    const BoundState psi =
        transform_wavefunction(tp, reference_state(tp, n_max));

    // Locate the peak: start from the x mapping to the reference well region.
    const double y_seed = tp.kind == ReferenceKind::kratzer
                              ? tp.kratzer.ye
                              : std::max(tp.y_offset + 0.5 / morse_derived(tp.morse).alpha,
                                         0.0);
    double x_peak = tp.profile->inverse_mapping(
        tp.orientation * (y_seed - tp.y_offset));
    const double scale = 1.0 + std::fabs(x_peak);
    double peak = std::fabs(psi.wavefunction(x_peak));
    for (int i = -200; i <= 200; ++i) {
        const double x = x_peak + 0.05 * scale * i;
        if (!tp.x_domain.contains(x)) continue;
        const double v = std::fabs(psi.wavefunction(x));
        if (v > peak) {
            peak = v;
            x_peak = x;
        }
    }
    if (!(peak > 0.0)) throw ConvergenceError("select_box: vanishing state");

    BoxResult box;
    const double thresh = 1e-10 * peak;
    for (int side = 0; side < 2; ++side) {
        const int dir = side == 0 ? -1 : +1;
        const double dom_edge = dir < 0 ? tp.x_domain.lo : tp.x_domain.hi;
        double x = x_peak, step = 0.1 * scale;
        int below = 0;  // consecutive probes under threshold, so isolated
                        // wavefunction nodes never truncate the box
        bool truncated = false;
        while (below < 3) {
            const double nx = x + dir * step;
            if (std::isfinite(dom_edge) &&
                (dir < 0 ? nx <= dom_edge : nx >= dom_edge)) {
                x = dom_edge;  // Dirichlet wall on the boundary is exact
                break;
            }
            if (std::fabs(nx - x_peak) >= width_cap) {
                x = x_peak + dir * width_cap;
                truncated = true;
                break;
            }
            x = nx;
            step *= 1.2;
            below = std::fabs(psi.wavefunction(x)) <= thresh ? below + 1 : 0;
        }
        if (dir < 0)
            box.x_min = x;
        else
            box.x_max = x;
        box.truncated = box.truncated || truncated;
    }
    return box;
}

}  // namespace pdmspec
