#include "dqm/constants.hpp"

#include <cmath>

#include "dqm/errors.hpp"

namespace dqm {
namespace {

// Golden-section minimum of a strictly convex function on [lo, hi].
// Returns the abscissa; tolerance is absolute in the argument.
template <typename F>
double golden_section_min(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

PhysicalConstants::PhysicalConstants(double hbar_, double G_, double c_)
    : hbar(hbar_), G(G_), c(c_) {
    if (!(hbar > 0.0) || !(G > 0.0) || !(c > 0.0)) {
        throw ConfigError("physical constants must be strictly positive");
    }
    planck_length = std::sqrt(G * hbar / (c * c * c));
    planck_time = std::sqrt(G * hbar / (c * c * c * c * c));
    planck_energy = hbar / planck_time;
}

PhysicalConstants PhysicalConstants::natural() { return {1.0, 1.0, 1.0}; }

PhysicalConstants PhysicalConstants::si() {
    return {1.054571817e-34, 6.67430e-11, 2.99792458e8};
}

ClockSpec::ClockSpec(double mass_, double distance_) : mass(mass_), distance(distance_) {
    if (!(mass > 0.0) || !(distance > 0.0)) {
        throw ConfigError("clock mass and distance must be strictly positive");
    }
}

PlanckUnits planck_units(const PhysicalConstants& constants) {
    return {constants.planck_length, constants.planck_time, constants.planck_energy};
}

double length_uncertainty_qm(const ClockSpec& spec, const PhysicalConstants& constants) {
    return std::sqrt(constants.hbar * spec.distance / (spec.mass * constants.c));
}

double length_uncertainty_gr(const ClockSpec& spec, const PhysicalConstants& constants) {
    return constants.G * spec.mass / (constants.c * constants.c);
}

LengthMinimum minimum_measurable_length(double length, const PhysicalConstants& constants) {
    if (!(length > 0.0)) {
        throw ConfigError("measured length must be strictly positive");
    }
    // In Planck units the total uncertainty is f(m) = sqrt(L/m) + m; work in
    // u = log(m) where f is still strictly convex.
    const double l_hat = length / constants.planck_length;
    const auto total = [l_hat](double u) {
        const double m = std::exp(u);
        return std::sqrt(l_hat / m) + m;
    };
    const double lo = std::log(1e-12);
    const double hi = std::log(1e12);
    const double u_star = golden_section_min(total, lo, hi, 1e-10);
    if (u_star - lo < 1e-3 || hi - u_star < 1e-3) {
        throw NumericError("uncertainty minimum not bracketed by the mass search interval");
    }
    return {total(u_star) * constants.planck_length,
            std::exp(u_star) * constants.planck_mass()};
}

}  // namespace dqm
