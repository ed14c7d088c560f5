#pragma once

#include <cstdint>

#include "dqm/constants.hpp"
#include "dqm/parallel.hpp"
#include "dqm/sampler.hpp"

namespace dqm {

/// Branch measure of a two-level superposition undergoing stochastic collapse.
/// Each Planck-time step moves rho1 by +-step_size with equal probability;
/// the barriers at 0 and 1 absorb. step_size = delta_E / E_p.
struct TwoLevelCollapseState {
    double rho1;
    double delta_E;
    double step_size;

    TwoLevelCollapseState(double rho1, double delta_E, const PhysicalConstants& constants);

    bool absorbed() const { return rho1 == 0.0 || rho1 == 1.0; }

  private:
    // rho1 is recomputed each step as origin + net * step_size (one rounding)
    // rather than accumulated, so a walk whose barriers sit on the step
    // lattice absorbs exactly instead of stalling a rounding error short.
    double origin_;
    std::int64_t net_ = 0;
    std::int64_t barrier_up_ = 0;
    std::int64_t barrier_down_ = 0;
    bool has_barrier_up_ = false;
    bool has_barrier_down_ = false;

    double measure_from_net() const;

    friend TwoLevelCollapseState collapse_step(const TwoLevelCollapseState& state,
                                               SeededRng& rng);
};

/// Coherent oscillation period hbar / delta_E of the undisturbed superposition.
double oscillation_period(double delta_E, double hbar);

/// A superposition can persist only while its gap does not exceed the Planck
/// energy (the period would drop below the Planck time). Boundary inclusive.
bool superposition_admissible(double delta_E, const PhysicalConstants& constants);

/// One Planck-time step of the measure walk. Stepping an absorbed state is an
/// error; an overshoot past a barrier absorbs there.
TwoLevelCollapseState collapse_step(const TwoLevelCollapseState& state, SeededRng& rng);

enum class Branch { none = 0, branch1 = 1, branch2 = 2 };

struct CollapseRun {
    std::int64_t steps = 0;
    Branch outcome = Branch::none;
    bool timed_out = false;
};

/// Walks until absorption or max_steps. An already-absorbed input returns
/// immediately with zero steps.
CollapseRun run_until_collapse(TwoLevelCollapseState state, SeededRng& rng,
                               std::int64_t max_steps);

struct CollapseEnsembleStats {
    double mean_steps = 0.0;
    double stderr_steps = 0.0;
    double branch1_fraction = 0.0;
    std::int64_t timed_out = 0;
    std::int64_t trials = 0;
};

/// Independent trials with per-trial derived streams; identical results for
/// serial and OpenMP execution.
CollapseEnsembleStats collapse_ensemble(double delta_E, double rho1_0, std::int64_t trials,
                                        const PhysicalConstants& constants,
                                        std::uint64_t base_seed,
                                        Execution ex = Execution::openmp,
                                        std::int64_t max_steps = 1'000'000'000);

struct CollapseTime {
    double tau_c = 0.0;      // mean steps times the Planck time
    double std_error = 0.0;  // Monte Carlo standard error, same units
    std::int64_t timed_out = 0;
};

/// Monte Carlo collapse time for a branch measure rho1_0 and gap delta_E.
/// Requires at least 100 trials and an admissible gap.
CollapseTime mean_collapse_time(double delta_E, double rho1_0, std::int64_t trials,
                                const PhysicalConstants& constants, SeededRng& rng,
                                Execution ex = Execution::openmp,
                                std::int64_t max_steps = 1'000'000'000);

}  // namespace dqm
