#pragma once

#include <functional>

#include "dqm/grid.hpp"
#include "dqm/linalg.hpp"

namespace dqm {

/// Discrete H = -hbar^2/(2m) D_xx + U(x,t) on the grid's interior stencil.
/// Periodic grids close the Laplacian through the corners; hard walls clamp
/// the wave function to zero beyond the ends.
class Hamiltonian1D {
public:
    Hamiltonian1D(Grid1D grid, double hbar, double mass, PotentialField potential = {});

    const Grid1D& grid() const { return grid_; }
    double hbar() const { return hbar_; }
    double mass() const { return mass_; }

    /// Operator matrix at time t. Real symmetric for any real potential.
    Tridiagonal assemble(double t) const;

    WaveFunction apply(const WaveFunction& psi, double t = 0.0) const;

    /// Re<psi|H|psi>; the state is used as is (no renormalisation).
    double expectation(const WaveFunction& psi, double t = 0.0) const;

private:
    Grid1D grid_;
    double hbar_;
    double mass_;
    PotentialField potential_;
};

/// One Crank-Nicolson step of i hbar dpsi/dt = H psi for a fixed Hermitian
/// tridiagonal H: solve (1 + i dt/(2 hbar) H) psi' = (1 - i dt/(2 hbar) H) psi.
WaveFunction crank_nicolson_step(const WaveFunction& psi, const Tridiagonal& h_matrix,
                                 double dt, double hbar);

/// One step under a Hamiltonian, sampling the potential at the step midpoint.
WaveFunction step(const WaveFunction& psi, const Hamiltonian1D& h, double t = 0.0);

using Observer = std::function<void(double, const WaveFunction&)>;

/// Runs round(t_final / grid.dt) Crank-Nicolson steps starting at t_start.
/// The observer, when given, sees the state after every step.
WaveFunction evolve(const WaveFunction& psi, const Hamiltonian1D& h, double t_final,
                    const Observer& observer = {}, double t_start = 0.0);

/// Closed-form free Gaussian packet at time t, sampled on the grid and
/// normalised discretely. Width grows as sigma0 * |1 + i hbar t / (2 m sigma0^2)|.
WaveFunction analytic_free_gaussian(const Grid1D& grid, double x0, double sigma0, double p0,
                                    double t, double hbar = 1.0, double mass = 1.0);

}  // namespace dqm
