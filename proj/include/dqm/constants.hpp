#pragma once

namespace dqm {

/// Fundamental constants and the Planck scales derived from them.
///
/// The derived members are fixed on construction:
///   planck_length = (G hbar / c^3)^(1/2)
///   planck_time   = (G hbar / c^5)^(1/2)
///   planck_energy = hbar / planck_time
struct PhysicalConstants {
    double hbar;  ///< action, J s
    double G;     ///< gravitational constant, m^3 kg^-1 s^-2
    double c;     ///< speed of light, m/s

    double planck_length;
    double planck_time;
    double planck_energy;

    /// Throws ConfigError unless hbar, G, c are all strictly positive.
    PhysicalConstants(double hbar_, double G_, double c_);

    /// hbar = G = c = 1; every Planck scale is exactly 1.
    static PhysicalConstants natural();

    /// CODATA 2018 SI values.
    static PhysicalConstants si();

    double planck_mass() const { return planck_energy / (c * c); }
};

/// Clock of mass `mass` used to time a light signal over `distance`.
struct ClockSpec {
    double mass;      ///< kg
    double distance;  ///< m, the length being measured

    ClockSpec(double mass_, double distance_);
};

struct PlanckUnits {
    double length;
    double time;
    double energy;
};

PlanckUnits planck_units(const PhysicalConstants& constants);

/// Quantum clock-position uncertainty (hbar L / (m c))^(1/2).
double length_uncertainty_qm(const ClockSpec& spec, const PhysicalConstants& constants);

/// Gravitational clock-size uncertainty G m / c^2.
double length_uncertainty_gr(const ClockSpec& spec, const PhysicalConstants& constants);

struct LengthMinimum {
    double dl_min;  ///< smallest achievable total uncertainty, m
    double m_star;  ///< clock mass attaining it, kg
};

/// Minimizes length_uncertainty_qm + length_uncertainty_gr over the clock
/// mass for a fixed measured length. The search runs in Planck units on a
/// log-mass bracket [1e-12, 1e12]; a minimum pinned to the bracket edge
/// throws NumericError.
LengthMinimum minimum_measurable_length(double length, const PhysicalConstants& constants);

}  // namespace dqm
