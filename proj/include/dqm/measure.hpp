#pragma once

#include <complex>
#include <vector>

#include "dqm/grid.hpp"

namespace dqm {

/// Paired density rho(x) and flux j(x) on a grid. rho is nonnegative and
/// integrates to 1; the pair satisfies the conservation law
/// d(rho)/dt + d(j)/dx = 0 along Schroedinger evolution.
struct MeasureField {
    Grid1D grid;
    std::vector<double> rho;
    std::vector<double> flux;
};

/// Momentum-space description of a state on a periodic grid: amplitudes
/// phi(p) on the centered lattice p_k = 2 pi hbar k / L, k in [-n/2, n/2),
/// and the density f(p) = |phi(p)|^2 with sum f dp = 1.
struct MomentumState {
    Grid1D grid;  ///< originating position grid; needed to invert
    double hbar = 1.0;
    double mass = 1.0;
    std::vector<double> p;
    std::vector<std::complex<double>> phi;
    std::vector<double> f;

    double dp() const { return p.size() > 1 ? p[1] - p[0] : 0.0; }
};

/// rho_i = |psi_i|^2.
std::vector<double> position_density(const WaveFunction& psi);

/// j_i = (hbar/m) Im(conj(psi_i) (d psi)_i) with boundary-aware central
/// differences. Exactly zero for real states and exactly antisymmetric
/// under conjugation.
std::vector<double> flux_density(const WaveFunction& psi, double hbar = 1.0,
                                 double mass = 1.0);

/// Both fields of a state at once.
MeasureField measure_field(const WaveFunction& psi, double hbar = 1.0, double mass = 1.0);

/// Max-norm residual of the conservation law across one propagator step:
/// max_i |(rho_after - rho_before)/dt + D_x j|, with j evaluated on the
/// half-step average state. Second-order small for Crank-Nicolson steps.
double continuity_residual(const WaveFunction& before, const WaveFunction& after,
                           double dt, double hbar = 1.0, double mass = 1.0);

/// Unitary transform to the centered momentum lattice. At t != 0 the free
/// dispersion phase exp(+i p^2 t / (2 m hbar)) is stripped from each mode,
/// so phi(p, t) is constant in t under free evolution.
MomentumState to_momentum(const WaveFunction& psi, double t = 0.0, double hbar = 1.0,
                          double mass = 1.0);

/// Inverse of to_momentum: reattaches exp(-i p^2 t / (2 m hbar)) and
/// transforms back to the position lattice.
WaveFunction to_position(const MomentumState& ms, double t = 0.0);

}  // namespace dqm
