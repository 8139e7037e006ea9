#include "pdmspec/pct.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "pdmspec/errors.hpp"

namespace pdmspec {

namespace {

// x-interval where orientation*f(x) + y_offset > 0, given f strictly
// increasing with the profile's image.
Interval positive_y_domain(const MassProfile& prof, int orientation,
                           double y_offset) {
    const Interval dom = prof.domain();
    const Interval img = prof.image();
    if (orientation > 0) {
        // y > 0  <=>  f(x) > -y_offset
        if (img.hi <= -y_offset)
            throw ConfigError("composition: mapped image never reaches y > 0");
        if (img.lo >= -y_offset) return dom;
        return {prof.inverse_mapping(-y_offset), dom.hi};
    }
    // y > 0  <=>  f(x) < y_offset
    if (img.lo >= y_offset)
        throw ConfigError("composition: mapped image never reaches y > 0");
    if (img.hi <= y_offset) return dom;
    return {dom.lo, prof.inverse_mapping(y_offset)};
}

// Probe that the state's tail has died inside the mapped y-range; a finite
// image edge cutting through live amplitude makes the composition ill-posed.
void check_support(const BoundState& state, double y_interior, double y_edge_lo,
                   double y_edge_hi) {
    const double ref = std::fabs(state.wavefunction(y_interior));
    if (!(ref > 0.0)) return;
    for (double edge : {y_edge_lo, y_edge_hi}) {
        if (!std::isfinite(edge)) continue;
        const double y_probe = y_interior + 0.9999 * (edge - y_interior);
        if (std::fabs(state.wavefunction(y_probe)) > 1e-6 * ref)
            throw DomainError(
                "composition: state support exits the mapped range");
    }
}

struct YRange {
    double lo, hi;  // mapped y-range over the x-domain
};

YRange mapped_range(const TargetProblem& tp) {
    const Interval img = tp.profile->image();
    double lo = tp.orientation > 0 ? tp.orientation * img.lo + tp.y_offset
                                   : tp.orientation * img.hi + tp.y_offset;
    double hi = tp.orientation > 0 ? tp.orientation * img.hi + tp.y_offset
                                   : tp.orientation * img.lo + tp.y_offset;
    // Kratzer compositions only use the y > 0 part.
    if (tp.kind == ReferenceKind::kratzer) lo = std::max(lo, 0.0);
    return {lo, hi};
}

}  // namespace

TargetProblem compose_kratzer(const KratzerParams& params,
                              std::shared_ptr<const MassProfile> profile) {
    if (!profile) throw ConfigError("composition: null profile");
    TargetProblem tp;
    tp.kind = ReferenceKind::kratzer;
    tp.kratzer = params;
    kratzer_energy(params, 0);  // parameter validation
    tp.profile = std::move(profile);
    if (tp.profile->kind() == ProfileKind::exponential) {
        // The unreflected mapping has image y < 0 and misses the Kratzer
        // half-line entirely; the reflected mapping is spectrum-equivalent.
        tp.orientation = -1;
        tp.y_offset = 0.0;
    }
    tp.x_domain =
        positive_y_domain(*tp.profile, tp.orientation, tp.y_offset);
    return tp;
}

TargetProblem compose_morse(const MorseParams& params,
                            std::shared_ptr<const MassProfile> profile) {
    if (!profile) throw ConfigError("composition: null profile");
    TargetProblem tp;
    tp.kind = ReferenceKind::morse;
    tp.morse = params;
    const MorseDerived d = morse_derived(params);  // parameter validation
    tp.profile = std::move(profile);
    if (tp.profile->kind() == ProfileKind::exponential) {
        // Reflect so the image is y > y_offset, and shift the left edge to
        // -3/alpha where the wavefunction is double-exponentially dead; the
        // unreflected image y < 0 misses the Morse well.
        tp.orientation = -1;
        tp.y_offset = -3.0 / d.alpha;
    }
    tp.x_domain = tp.profile->domain();
    return tp;
}

double mapped_y(const TargetProblem& tp, double x) {
    return tp.orientation * tp.profile->mapping(x) + tp.y_offset;
}

double mass_correction(const TargetProblem& tp, double x) {
    const double m = tp.profile->mass(x);
    if (!(m > 0.0)) throw DomainError("composition: non-positive mass");
    const double m1 = tp.profile->dmass(x);
    const double m2 = tp.profile->d2mass(x);
    const double r1 = m1 / m;
    const double bracket = m2 / m - 1.75 * r1 * r1;
    return tp.correction_sign * bracket / (8.0 * m * target_kinetic_mass(tp));
}

double target_potential(const TargetProblem& tp, double x) {
    if (!tp.x_domain.contains(x))
        throw DomainError("composition: x outside the target domain");
    const double y = mapped_y(tp, x);
    const double v = tp.kind == ReferenceKind::kratzer
                         ? kratzer_potential(tp.kratzer, y)
                         : morse_potential_pekeris(tp.morse, y);
    return v + mass_correction(tp, x);
}

double target_effective_potential(const TargetProblem& tp, double x) {
    if (!tp.x_domain.contains(x))
        throw DomainError("composition: x outside the target domain");
    const double y = mapped_y(tp, x);
    const double v = tp.kind == ReferenceKind::kratzer
                         ? kratzer_effective_potential(tp.kratzer, y)
                         : morse_potential_pekeris(tp.morse, y);
    return v + mass_correction(tp, x);
}

double target_kinetic_mass(const TargetProblem& tp) {
    return tp.kind == ReferenceKind::kratzer ? kratzer_kinetic_mass(tp.kratzer)
                                             : morse_kinetic_mass(tp.morse);
}

double reference_energy(const TargetProblem& tp, int n) {
    return tp.kind == ReferenceKind::kratzer ? kratzer_energy(tp.kratzer, n)
                                             : morse_energy(tp.morse, n);
}

BoundState reference_state(const TargetProblem& tp, int n) {
    return tp.kind == ReferenceKind::kratzer
               ? kratzer_wavefunction(tp.kratzer, n)
               : morse_wavefunction(tp.morse, n);
}

namespace {

BoundState transform_with(const TargetProblem& tp, const BoundState& state,
                          bool corrected) {
    const YRange yr = mapped_range(tp);
    const double y_interior =
        tp.kind == ReferenceKind::kratzer
            ? std::max(tp.kratzer.ye,
                       (0.5 * (kratzer_eta(tp.kratzer) + 1.0) + state.n) /
                           kratzer_kappa(tp.kratzer, state.n))
            : 0.0;
    // The Kratzer origin is the reference problem's own wall (u ~ y^{(eta+1)/2});
    // only a lower edge strictly above 0 can cut live amplitude.
    const double lo_edge = tp.kind == ReferenceKind::kratzer && yr.lo == 0.0
                               ? -std::numeric_limits<double>::infinity()
                               : yr.lo;
    check_support(state, y_interior, lo_edge, yr.hi);

    BoundState out;
    out.n = state.n;
    out.ell = state.ell;
    out.energy = state.energy;
    out.provenance = state.provenance;
    out.domain = tp.x_domain;
    auto prof = tp.profile;
    const int sgn = tp.orientation;
    const double off = tp.y_offset;
    auto phi = state.wavefunction;
    if (corrected) {
        out.wavefunction = [prof, sgn, off, phi](double x) {
            const double m = prof->mass(x);
            return std::pow(m, 0.25) * phi(sgn * prof->mapping(x) + off);
        };
    } else {
        out.wavefunction = [prof, sgn, off, phi](double x) {
            const double m = prof->mass(x);
            return phi(sgn * prof->mapping(x) + off) / m;
        };
    }
    return out;
}

}  // namespace

BoundState transform_wavefunction(const TargetProblem& tp,
                                  const BoundState& state) {
    return transform_with(tp, state, true);
}

BoundState transform_wavefunction_uncorrected(const TargetProblem& tp,
                                              const BoundState& state) {
    return transform_with(tp, state, false);
}

std::string audit_equation_id(const TargetProblem& tp) {
    const ProfileKind pk = tp.profile->kind();
    if (pk == ProfileKind::uniform) return "";
    if (tp.kind == ReferenceKind::kratzer) {
        if (pk == ProfileKind::lorentzian) return "eq21";
        if (pk == ProfileKind::squared_lorentzian) return "eq26";
        return "eq30";
    }
    if (pk == ProfileKind::lorentzian) return "eq45";
    if (pk == ProfileKind::squared_lorentzian) return "eq47";
    return "eq49";
}

double printed_closed_form_target(const TargetProblem& tp,
                                const std::string& equation_id, double x) {
    const ProfileParams pp = tp.profile->params();
    if (equation_id == "eq21") {
        const double De = tp.kratzer.De, ye = tp.kratzer.ye;
        const double s = x + std::sqrt(pp.q + x * x);
        const double al = pp.a * std::log(s);
        if (al == 0.0) throw DomainError("eq21: printed form singular at y=0");
        const double w = (al - ye) / al;
        return De * w * w -
               (2.0 * pp.q + x * x) / (8.0 * pp.a * pp.a * (pp.q + x * x));
    }
    if (equation_id == "eq26") {
        const double De = tp.kratzer.De, ye = tp.kratzer.ye;
        const double rb = std::sqrt(pp.b);
        const double g = (pp.a / rb) * std::atan(x / rb);
        if (g == 0.0) throw DomainError("eq26: printed form singular at y=0");
        const double w = (g - ye) / g;
        return De * w * w - (pp.b + 2.0 * x * x) / (2.0 * pp.a * pp.a);
    }
    if (equation_id == "eq30") {
        const double De = tp.kratzer.De, ye = tp.kratzer.ye;
        const double w = 1.0 + 0.5 * pp.q * ye * std::exp(0.5 * pp.q * x);
        return De * w * w +
               (9.0 / 128.0) * std::pow(pp.q, 4) * std::exp(-pp.q * x);
    }
    const MorseDerived d = morse_derived(tp.morse);
    const double D = tp.morse.D, g = d.gamma_rot;
    if (equation_id == "eq45") {
        const double s = x + std::sqrt(pp.q + x * x);
        const double e1 = std::pow(s, -d.alpha * pp.a);
        return (D + g * d.D1) * e1 * e1 + (g * d.D1 - 2.0 * d.D2) * e1 +
               g * d.D0;
    }
    if (equation_id == "eq47") {
        const double rb = std::sqrt(pp.b);
        const double e1 =
            std::exp(-(d.alpha * pp.a / rb) * std::atan(x / rb));
        // The printed correction writes q where the profile parameter is b;
        // transcribed literally with q = 1.
        const double q_literal = 1.0;
        return (D + g * d.D1) * e1 * e1 + (g * d.D1 - 2.0 * D) * e1 +
               g * d.D0 - (q_literal + 2.0 * x * x) / (2.0 * pp.a * pp.a);
    }
    if (equation_id == "eq49") {
        const double A =
            std::exp((2.0 * d.alpha / pp.q) * std::exp(-0.5 * pp.q * x));
        return D * (A * A - 2.0 * A) + g * (d.D0 + d.D1 * A + d.D2 * A * A);
    }
    throw ConfigError("printed_closed_form_target: unknown equation id " +
                      equation_id);
}

std::vector<AuditRecord> audit(const TargetProblem& tp) {
    const std::string id = audit_equation_id(tp);
    if (id.empty()) return {};

    // Sample window chosen in y and pulled back through the mapping, away
    // from singular endpoints.
    const YRange yr = mapped_range(tp);
    double ylo, yhi;
    if (tp.kind == ReferenceKind::kratzer) {
        ylo = 0.3 * tp.kratzer.ye;
        yhi = 8.0 * tp.kratzer.ye;
        if (std::isfinite(yr.hi)) yhi = std::min(yhi, 0.95 * yr.hi);
    } else {
        ylo = -1.0;
        yhi = 6.0;
        if (std::isfinite(yr.hi)) yhi = std::min(yhi, 0.75 * yr.hi);
        if (std::isfinite(yr.lo)) ylo = std::max(ylo, 0.75 * yr.lo);
    }
    if (!(yhi > ylo))
        throw ConfigError("audit: empty sampling window");

    const int n_samples = 64;
    AuditRecord rec;
    rec.equation_id = id;
    rec.sample_points.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double y = ylo + (yhi - ylo) * i / (n_samples - 1);
        const double x =
            tp.profile->inverse_mapping(tp.orientation * (y - tp.y_offset));
        rec.sample_points.push_back(x);
        const double dev =
            std::fabs(target_potential(tp, x) -
                      printed_closed_form_target(tp, id, x));
        if (dev > rec.max_abs_deviation) {
            rec.max_abs_deviation = dev;
            rec.argmax_x = x;
        }
    }
    rec.verdict = rec.max_abs_deviation <= 1e-9 ? "consistent" : "discrepant";
    return {rec};
}

}  // namespace pdmspec
