#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pdmspec/mass_profile.hpp"
#include "pdmspec/reference.hpp"

namespace pdmspec {

enum class ReferenceKind { kratzer, morse };

// A reference potential in y composed with a mass profile through
// y = orientation * f(x) + y_offset. Orientation-reversing maps and additive
// constants both preserve the spectrum identity, which is what makes the
// exponential-profile compositions well posed.
struct TargetProblem {
    ReferenceKind kind = ReferenceKind::kratzer;
    KratzerParams kratzer{};
    MorseParams morse{};
    std::shared_ptr<const MassProfile> profile;
    int orientation = +1;
    double y_offset = 0.0;
    Interval x_domain{};
    double correction_sign = +1.0;  // negative-control hook; physical value +1
};

TargetProblem compose_kratzer(const KratzerParams& params,
                              std::shared_ptr<const MassProfile> profile);
TargetProblem compose_morse(const MorseParams& params,
                            std::shared_ptr<const MassProfile> profile);

double mapped_y(const TargetProblem& tp, double x);

// (1/8m)[m''/m - (7/4)(m'/m)^2] scaled by 1/mu_k, zero for uniform mass.
double mass_correction(const TargetProblem& tp, double x);

// V(f(x)) + correction. For Kratzer this uses the bare well; the centrifugal
// term enters through target_effective_potential, which is what the
// discretized operator consumes.
double target_potential(const TargetProblem& tp, double x);
double target_effective_potential(const TargetProblem& tp, double x);

double target_kinetic_mass(const TargetProblem& tp);
double reference_energy(const TargetProblem& tp, int n);
BoundState reference_state(const TargetProblem& tp, int n);

// psi(x) = m(x)^{1/4} phi(f(x)), energy unchanged.
BoundState transform_wavefunction(const TargetProblem& tp,
                                  const BoundState& state);
// psi(x) = phi(f(x)) / m(x): the uncorrected printed convention, kept as the
// negative control for the residual test.
BoundState transform_wavefunction_uncorrected(const TargetProblem& tp,
                                              const BoundState& state);

struct AuditRecord {
    std::string equation_id;
    double max_abs_deviation = 0.0;
    double argmax_x = 0.0;
    std::vector<double> sample_points;
    std::string verdict;  // "consistent" iff max_abs_deviation <= 1e-9
};

// Equation label audited for this composition ("" for the uniform profile).
std::string audit_equation_id(const TargetProblem& tp);

// Literal transcription of the printed closed-form target potential,
// typos included, for audit comparison only.
double printed_closed_form_target(const TargetProblem& tp,
                                const std::string& equation_id, double x);

std::vector<AuditRecord> audit(const TargetProblem& tp);

}  // namespace pdmspec
