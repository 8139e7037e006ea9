#include "pdmspec/specfun.hpp"
#include "pdmspec/errors.hpp"
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace pdmspec {

double laguerre(int n, double alpha, double x) {
    if (n < 0)
        throw DomainError("laguerre: degree must be non-negative, got " + std::to_string(n));
    if (alpha <= -1.0)
        throw DomainError("laguerre: upper index must exceed -1, got " + std::to_string(alpha));
    if (n == 0) return 1.0;
    double lkm2 = 1.0;
    double lkm1 = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        double lk = ((2.0 * k - 1.0 + alpha - x) * lkm1 - (k - 1.0 + alpha) * lkm2) / k;
        lkm2 = lkm1;
        lkm1 = lk;
    }
    return lkm1;
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

namespace {

// Gauss-Kronrod 15(7) nodes/weights on [-1,1], abscissae symmetric.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GKPanel {
    double kronrod;
    double err;
};

GKPanel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    for (int j = 0; j < 7; ++j) {
        double fp = f(c + hw * xgk[j]);
        double fm = f(c - hw * xgk[j]);
        resk += wgk[j] * (fp + fm);
        if (j % 2 == 1) resg += wg[j / 2] * (fp + fm);
    }
    resk *= hw;
    resg *= hw;
    // conservative estimate: the Gauss/Kronrod gap bounds the committed error
    return {resk, std::abs(resk - resg)};
}

struct Panel {
    double a, b, val, err;
};

// pops the largest error; ties resolved leftmost so runs are deterministic
struct PanelOrder {
    bool operator()(const Panel& p, const Panel& q) const {
        return p.err != q.err ? p.err < q.err : p.a > q.a;
    }
};

} // namespace

IntegrationResult integrate(const std::function<double(double)>& f,
                            double a, double b, double tol) {
    if (!(a < b)) throw ConfigError("integrate: requires a < b");
    if (!(tol > 0.0)) throw ConfigError("integrate: requires tol > 0");

    // globally adaptive: split the worst panel until the summed estimate
    // clears tol or the panel budget runs out (divergent integrands stall
    // with an O(1) error stuck on the singular panel)
    constexpr int kMaxPanels = 50000;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> panels;
    IntegrationResult acc;
    auto push = [&](double lo, double hi) {
        const GKPanel p = gk15(f, lo, hi);
        acc.evaluations += 15;
        panels.push({lo, hi, p.kronrod, p.err});
        return p.err;
    };
    double total_err = push(a, b);
    int count = 1;
    while (total_err > tol && count < kMaxPanels) {
        const Panel worst = panels.top();
        panels.pop();
        total_err -= worst.err;
        const double m = 0.5 * (worst.a + worst.b);
        total_err += push(worst.a, m);
        total_err += push(m, worst.b);
        ++count;
    }

    acc.value = 0.0;
    acc.error_estimate = 0.0;
    while (!panels.empty()) {
        acc.value += panels.top().val;
        acc.error_estimate += panels.top().err;
        panels.pop();
    }
    acc.converged = acc.error_estimate <= tol;
    if (!acc.converged)
        throw ConvergenceError("integrate: error estimate " +
                               std::to_string(acc.error_estimate) + " > tol " +
                               std::to_string(tol) + " after " +
                               std::to_string(count) + " panels");
    return acc;
}

IntegrationResult integrate_to_infinity(const std::function<double(double)>& f,
                                        double a, double decay_rate,
                                        double envelope_at_a, double tol) {
    if (!(decay_rate > 0.0))
        throw ConfigError("integrate_to_infinity: decay_rate must be positive");
    if (!(envelope_at_a > 0.0))
        throw ConfigError("integrate_to_infinity: envelope_at_a must be positive");
    // truncate where the envelope tail integral bound falls under tol/10
    double tail = envelope_at_a / decay_rate;
    double b = a;
    while (tail > 0.1 * tol) {
        b += 1.0 / decay_rate;
        tail *= std::exp(-1.0);
        if (b - a > 1e6) throw ConvergenceError("integrate_to_infinity: truncation point ran away");
    }
    return integrate(f, a, b, tol);
}

} // namespace pdmspec
