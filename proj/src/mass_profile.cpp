#include "pdmspec/mass_profile.hpp"
#include "pdmspec/errors.hpp"
#include <cmath>
#include <string>

namespace pdmspec {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0))
        throw ConfigError(std::string("mass profile: ") + what + " must be positive, got " +
                          std::to_string(v));
}

struct Uniform final : MassProfile {
    ProfileKind kind() const override { return ProfileKind::uniform; }
    std::string name() const override { return "uniform"; }
    ProfileParams params() const override { return {}; }
    double mass(double) const override { return 1.0; }
    double dmass(double) const override { return 0.0; }
    double d2mass(double) const override { return 0.0; }
    double mapping(double x) const override { return x; }
    double inverse_mapping(double y) const override { return y; }
};

struct Lorentzian final : MassProfile {
    double a, q;
    Lorentzian(double a_, double q_) : a(a_), q(q_) {}
    ProfileKind kind() const override { return ProfileKind::lorentzian; }
    std::string name() const override {
        return "lorentzian a=" + std::to_string(a) + " q=" + std::to_string(q);
    }
    ProfileParams params() const override { return {a, q, 1.0}; }
    double mass(double x) const override { return a * a / (q + x * x); }
    double dmass(double x) const override {
        double d = q + x * x;
        return -2.0 * a * a * x / (d * d);
    }
    double d2mass(double x) const override {
        double d = q + x * x;
        return a * a * (6.0 * x * x - 2.0 * q) / (d * d * d);
    }
    double mapping(double x) const override { return a * std::log(x + std::sqrt(q + x * x)); }
    double inverse_mapping(double y) const override {
        // x = sinh-type inversion of a*ln(x + sqrt(q + x^2))
        double e = std::exp(y / a);
        return 0.5 * (e - q / e);
    }
};

struct SquaredLorentzian final : MassProfile {
    double a, b;
    SquaredLorentzian(double a_, double b_) : a(a_), b(b_) {}
    ProfileKind kind() const override { return ProfileKind::squared_lorentzian; }
    std::string name() const override {
        return "squared_lorentzian a=" + std::to_string(a) + " b=" + std::to_string(b);
    }
    ProfileParams params() const override { return {a, 1.0, b}; }
    double mass(double x) const override {
        double d = b + x * x;
        return a * a / (d * d);
    }
    double dmass(double x) const override {
        double d = b + x * x;
        return -4.0 * a * a * x / (d * d * d);
    }
    double d2mass(double x) const override {
        double d = b + x * x;
        return 4.0 * a * a * (5.0 * x * x - b) / (d * d * d * d);
    }
    double mapping(double x) const override {
        double rb = std::sqrt(b);
        return (a / rb) * std::atan(x / rb);
    }
    double inverse_mapping(double y) const override {
        double rb = std::sqrt(b);
        double half = 0.5 * M_PI * a / rb;
        if (!(y > -half && y < half))
            throw DomainError("squared_lorentzian: y outside image (-a*pi/(2*sqrt(b)), a*pi/(2*sqrt(b)))");
        return rb * std::tan(rb * y / a);
    }
    Interval image() const override {
        double half = 0.5 * M_PI * a / std::sqrt(b);
        return {-half, half};
    }
};

struct Exponential final : MassProfile {
    double q;
    explicit Exponential(double q_) : q(q_) {}
    ProfileKind kind() const override { return ProfileKind::exponential; }
    std::string name() const override { return "exponential q=" + std::to_string(q); }
    ProfileParams params() const override { return {1.0, q, 1.0}; }
    double mass(double x) const override { return std::exp(-q * x); }
    double dmass(double x) const override { return -q * std::exp(-q * x); }
    double d2mass(double x) const override { return q * q * std::exp(-q * x); }
    double mapping(double x) const override { return -(2.0 / q) * std::exp(-0.5 * q * x); }
    double inverse_mapping(double y) const override {
        if (!(y < 0.0))
            throw DomainError("exponential: y outside image (-inf, 0)");
        return -(2.0 / q) * std::log(-0.5 * q * y);
    }
    Interval image() const override { return {-std::numeric_limits<double>::infinity(), 0.0}; }
};

} // namespace

std::unique_ptr<MassProfile> make_uniform() { return std::make_unique<Uniform>(); }

std::unique_ptr<MassProfile> make_lorentzian(double a, double q) {
    require_positive(a, "lorentzian a");
    require_positive(q, "lorentzian q");
    return std::make_unique<Lorentzian>(a, q);
}

std::unique_ptr<MassProfile> make_squared_lorentzian(double a, double b) {
    require_positive(a, "squared_lorentzian a");
    require_positive(b, "squared_lorentzian b");
    return std::make_unique<SquaredLorentzian>(a, b);
}

std::unique_ptr<MassProfile> make_exponential(double q) {
    require_positive(q, "exponential q");
    return std::make_unique<Exponential>(q);
}

} // namespace pdmspec
