#pragma once
#include <limits>
#include <memory>
#include <string>

namespace pdmspec {

enum class ProfileKind { uniform, lorentzian, squared_lorentzian, exponential };

// Open interval; infinite endpoints allowed.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x > lo && x < hi; }
};

// Named profile parameters; entries not used by a given profile stay at 1.
struct ProfileParams {
    double a = 1.0;
    double q = 1.0;
    double b = 1.0;
};

// A position-dependent mass distribution m(x) with closed-form derivatives,
// the mapping y = f(x) = int sqrt(m) dx, and its inverse.
class MassProfile {
public:
    virtual ~MassProfile() = default;
    virtual ProfileKind kind() const = 0;
    virtual std::string name() const = 0;
    virtual ProfileParams params() const = 0;
    virtual double mass(double x) const = 0;
    virtual double dmass(double x) const = 0;
    virtual double d2mass(double x) const = 0;
    virtual double mapping(double x) const = 0;
    virtual double inverse_mapping(double y) const = 0;
    virtual Interval domain() const { return {}; }
    virtual Interval image() const { return {}; }
};

// uniform m = 1; lorentzian m = a^2/(q+x^2); squared_lorentzian m = a^2/(b+x^2)^2;
// exponential m = e^{-qx}. Parameter positivity enforced.
std::unique_ptr<MassProfile> make_uniform();
std::unique_ptr<MassProfile> make_lorentzian(double a, double q);
std::unique_ptr<MassProfile> make_squared_lorentzian(double a, double b);
std::unique_ptr<MassProfile> make_exponential(double q);

} // namespace pdmspec
