#include "pdmspec/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdmspec/errors.hpp"

namespace pdmspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Smallest pivot magnitude tolerated in the Sturm recurrence and in the
// inverse-iteration elimination; scaled by the squared off-diagonals so the
// e^2/d quotient cannot overflow.
double pivot_floor(const SymTridiag& t) {
    double emax2 = 1.0;
    for (double e : t.off) emax2 = std::max(emax2, e * e);
    return std::numeric_limits<double>::min() * emax2 / kEps;
}

struct GershgorinBounds {
    double lo, hi;
};

GershgorinBounds gershgorin(const SymTridiag& t) {
    const int n = t.dim();
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::fabs(t.off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::fabs(t.off[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    const double pad = kEps * (std::fabs(lo) + std::fabs(hi)) + 1e-300;
    return {lo - pad, hi + pad};
}

int sturm_count_guarded(const SymTridiag& t, double x, double pivmin) {
    const int n = t.dim();
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < n; ++i) {
        const double e2 = (i > 0) ? t.off[i - 1] * t.off[i - 1] : 0.0;
        d = t.diag[i] - x - e2 / d;
        if (std::fabs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

// LU factorization of (T - lambda I) with partial pivoting. Row swaps fill a
// second superdiagonal; multipliers and swap flags are kept so repeated
// solves can replay the elimination on new right-hand sides.
struct TriLU {
    std::vector<double> u0, u1, u2, mult;
    std::vector<unsigned char> swapped;
};

TriLU factor(const SymTridiag& t, double lambda, double pivmin) {
    const int n = t.dim();
    TriLU f;
    f.u0.assign(n, 0.0);
    f.u1.assign(n, 0.0);
    f.u2.assign(n, 0.0);
    f.mult.assign(n, 0.0);
    f.swapped.assign(n, 0);

    double p = t.diag[0] - lambda;           // running row, columns (i, i+1)
    double q = (n > 1) ? t.off[0] : 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double bl = t.off[i];          // row i+1 of T - lambda I
        const double bd = t.diag[i + 1] - lambda;
        const double bu = (i + 2 < n) ? t.off[i + 1] : 0.0;
        double rp, rq;                        // row to be eliminated
        if (std::fabs(bl) > std::fabs(p)) {
            f.swapped[i] = 1;
            f.u0[i] = bl;
            f.u1[i] = bd;
            f.u2[i] = bu;
            rp = p;
            rq = q;
            const double m = rp / f.u0[i];
            f.mult[i] = m;
            p = rq - m * f.u1[i];
            q = -m * f.u2[i];
        } else {
            double piv = p;
            if (std::fabs(piv) < pivmin) piv = pivmin;
            f.u0[i] = piv;
            f.u1[i] = q;
            f.u2[i] = 0.0;
            const double m = bl / piv;
            f.mult[i] = m;
            p = bd - m * q;
            q = bu;
        }
    }
    if (std::fabs(p) < pivmin) p = pivmin;
    f.u0[n - 1] = p;
    return f;
}

void solve(const TriLU& f, std::vector<double>& b) {
    const int n = static_cast<int>(f.u0.size());
    for (int i = 0; i + 1 < n; ++i) {
        if (f.swapped[i]) std::swap(b[i], b[i + 1]);
        b[i + 1] -= f.mult[i] * b[i];
    }
    b[n - 1] /= f.u0[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - f.u1[n - 2] * b[n - 1]) / f.u0[n - 2];
    for (int i = n - 3; i >= 0; --i)
        b[i] = (b[i] - f.u1[i] * b[i + 1] - f.u2[i] * b[i + 2]) / f.u0[i];
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void scale(std::vector<double>& v, double c) {
    for (double& x : v) x *= c;
}

void fix_sign(std::vector<double>& v) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::fabs(x));
    for (double x : v) {
        if (std::fabs(x) >= 0.1 * vmax) {
            if (x < 0.0) scale(v, -1.0);
            return;
        }
    }
}

double rayleigh(const SymTridiag& t, const std::vector<double>& v) {
    const int n = t.dim();
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        double tv = t.diag[i] * v[i];
        if (i > 0) tv += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) tv += t.off[i] * v[i + 1];
        num += v[i] * tv;
        den += v[i] * v[i];
    }
    return num / den;
}

}  // namespace

int sturm_count(const SymTridiag& t, double x) {
    return sturm_count_guarded(t, x, pivot_floor(t));
}

double tridiag_norm_inf(const SymTridiag& t) {
    const int n = t.dim();
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = std::fabs(t.diag[i]) +
                         (i > 0 ? std::fabs(t.off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::fabs(t.off[i]) : 0.0);
        nrm = std::max(nrm, r);
    }
    return nrm;
}

void tridiag_apply(const SymTridiag& t, const std::vector<double>& v,
                   std::vector<double>& y) {
    const int n = t.dim();
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double tv = t.diag[i] * v[i];
        if (i > 0) tv += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) tv += t.off[i] * v[i + 1];
        y[i] = tv;
    }
}

double eigenpair_residual(const SymTridiag& t, double lambda,
                          const std::vector<double>& v) {
    std::vector<double> tv;
    tridiag_apply(t, v, tv);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < t.dim(); ++i) {
        const double r = tv[i] - lambda * v[i];
        num += r * r;
        den += v[i] * v[i];
    }
    return std::sqrt(num / den);
}

std::vector<EigenPair> lowest_eigenpairs(const SymTridiag& t, int k) {
    const int n = t.dim();
    if (n < 1 || t.off.size() + 1 != t.diag.size())
        throw ConfigError("tridiag: inconsistent dimensions");
    if (k < 1 || k > n)
        throw ConfigError("tridiag: eigenpair count out of range");

    const double pivmin = pivot_floor(t);
    const auto [glo, ghi] = gershgorin(t);

    std::vector<EigenPair> out;
    out.reserve(k);
    for (int j = 0; j < k; ++j) {
        // Bisect until the bracket width reaches rounding level.
        double lo = glo, hi = ghi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (sturm_count_guarded(t, mid, pivmin) > j)
                hi = mid;
            else
                lo = mid;
            if (hi - lo <= kEps * (std::fabs(lo) + std::fabs(hi)) + 1e-300)
                break;
        }
        double lambda = 0.5 * (lo + hi);

        // Inverse iteration, accepted on the eigenpair residual. A perturbed
        // refactorization handles the rare exact-singularity hit.
        const double tnorm = std::max(tridiag_norm_inf(t), 1e-300);
        std::vector<double> v;
        double lam_rq = lambda;
        bool ok = false;
        for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
            v.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
            const TriLU f = factor(t, lambda, pivmin);
            bool finite = true;
            for (int sweep = 0; sweep < 3 && finite; ++sweep) {
                solve(f, v);
                const double nrm = norm2(v);
                finite = std::isfinite(nrm) && nrm > 0.0;
                if (finite) scale(v, 1.0 / nrm);
            }
            if (finite) {
                // Near-degenerate neighbors: keep the basis orthogonal
                // before the Rayleigh step.
                if (j > 0 && std::fabs(lambda - out[j - 1].value) <
                                 1e3 * kEps * tnorm) {
                    const auto& prev = out[j - 1].vector;
                    double dot = 0.0;
                    for (int i = 0; i < n; ++i) dot += v[i] * prev[i];
                    for (int i = 0; i < n; ++i) v[i] -= dot * prev[i];
                    const double nrm = norm2(v);
                    if (nrm > 0.0) scale(v, 1.0 / nrm);
                }
                lam_rq = rayleigh(t, v);
                ok = eigenpair_residual(t, lam_rq, v) <= 1e-10 * tnorm;
            }
            if (!ok)
                lambda += (std::fabs(lambda) + 1.0) * kEps *
                          static_cast<double>(4 << attempt);
        }
        if (!ok)
            throw ConvergenceError("tridiag: inverse iteration did not converge");

        fix_sign(v);
        EigenPair p;
        p.value = lam_rq;
        p.vector = std::move(v);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace pdmspec
