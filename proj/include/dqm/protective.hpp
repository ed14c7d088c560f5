#pragma once

#include <vector>

#include "dqm/measure.hpp"
#include "dqm/parallel.hpp"
#include "dqm/propagator.hpp"

namespace dqm {

/// Ordered, disjoint cell-index ranges covering the whole grid. Volumes are
/// cell counts times dx.
struct RegionPartition {
    struct Region {
        int first;  // inclusive cell index
        int last;   // inclusive cell index
    };
    Grid1D grid;
    std::vector<Region> regions;
    std::vector<double> volumes;

    static RegionPartition uniform(const Grid1D& grid, int n_regions);

    int size() const { return static_cast<int>(regions.size()); }
};

/// Values of the normalised region projector: 1/v_n on the cells of region n,
/// zero elsewhere.
std::vector<double> projector_An(const RegionPartition& partition, int n);

/// Adiabatic measurement context: a state protected by its own Hamiltonian,
/// a conserved pointer momentum P, a duration T, and the trapezoid coupling
/// schedule g(t) with linear ramps of ramp_fraction*T on both ends and
/// plateau value 1/((1 - ramp_fraction)*T), so that the integral is exactly 1.
class ProtectiveSetup {
public:
    ProtectiveSetup(WaveFunction state, Hamiltonian1D hamiltonian, double pointer_momentum,
                    double duration, double ramp_fraction = 0.2);

    const WaveFunction& state() const { return state_; }
    const Hamiltonian1D& hamiltonian() const { return hamiltonian_; }
    double pointer_momentum() const { return pointer_momentum_; }
    double duration() const { return duration_; }
    double ramp_fraction() const { return ramp_fraction_; }
    double energy() const { return energy_; }

    /// Coupling schedule; zero outside [0, T].
    double g(double t) const;

    /// Distance from the protected level to the nearest other level, when the
    /// spectrum is computable (hard wall, or periodic without potential).
    /// Negative when unknown.
    double level_gap() const { return level_gap_; }

private:
    WaveFunction state_;
    Hamiltonian1D hamiltonian_;
    double pointer_momentum_;
    double duration_;
    double ramp_fraction_;
    double energy_;
    double level_gap_;
};

struct ShiftResult {
    double shift = 0.0;         // time integral of g(t) <op>(t) along the coupled evolution
    double exact = 0.0;         // same expectation on the unperturbed protected state
    double post_overlap = 0.0;  // |<psi(0)|psi(T)>|
    bool adiabaticity_warning = false;
};

/// Pointer shift for the density projector A_n: evolves under
/// H + g(t) P A_n and accumulates the g-weighted expectation. Converges to
/// the region-averaged density as T grows.
ShiftResult protective_shift_An(const ProtectiveSetup& setup, const RegionPartition& partition,
                                int n);

/// Pointer shift for the flux operator B_n (Hermitian symmetrisation of
/// A_n d/dx, scaled to flux units). Converges to the region-averaged flux.
ShiftResult protective_shift_Bn(const ProtectiveSetup& setup, const RegionPartition& partition,
                                int n);

/// Piecewise-constant density and flux rebuilt from the full shift families.
/// The density is renormalised to unit mass. Regions run in parallel under
/// the OpenMP policy with identical results.
MeasureField reconstruct_measure(const ProtectiveSetup& setup, const RegionPartition& partition,
                                 Execution ex = Execution::openmp);

}  // namespace dqm
