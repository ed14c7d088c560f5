#include "dqm/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dqm/errors.hpp"
#include "dqm/numeric.hpp"

namespace dqm {

TwoLevelCollapseState::TwoLevelCollapseState(double rho1_in, double delta_E_in,
                                             const PhysicalConstants& constants)
    : rho1(rho1_in),
      delta_E(delta_E_in),
      step_size(delta_E_in / constants.planck_energy),
      origin_(rho1_in) {
    if (!(rho1 >= 0.0 && rho1 <= 1.0)) {
        throw ConfigError("branch measure must lie in [0, 1]");
    }
    if (!(delta_E > 0.0)) {
        throw ConfigError("collapse dynamics requires a positive energy gap");
    }
    if (!superposition_admissible(delta_E, constants)) {
        throw ConfigError("energy gap exceeds the Planck energy; superposition inadmissible");
    }
    // When a barrier lies on the walk lattice, record the exact net
    // displacement that reaches it; comparing integers there keeps the
    // gambler's-ruin closed form exact for integer 1/s and rho1/s.
    const double q_down = origin_ / step_size;
    const double q_up = (1.0 - origin_) / step_size;
    if (std::abs(q_down - std::round(q_down)) <= 1e-9 * std::max(1.0, q_down)) {
        has_barrier_down_ = true;
        barrier_down_ = -std::llround(q_down);
    }
    if (std::abs(q_up - std::round(q_up)) <= 1e-9 * std::max(1.0, q_up)) {
        has_barrier_up_ = true;
        barrier_up_ = std::llround(q_up);
    }
}

double TwoLevelCollapseState::measure_from_net() const {
    if (has_barrier_up_ && net_ >= barrier_up_) {
        return 1.0;
    }
    if (has_barrier_down_ && net_ <= barrier_down_) {
        return 0.0;
    }
    return std::clamp(origin_ + static_cast<double>(net_) * step_size, 0.0, 1.0);
}

double oscillation_period(double delta_E, double hbar) {
    if (!(delta_E > 0.0)) {
        throw ConfigError("oscillation period requires a positive energy gap");
    }
    return hbar / delta_E;
}

bool superposition_admissible(double delta_E, const PhysicalConstants& constants) {
    if (!(delta_E >= 0.0)) {
        throw ConfigError("energy gap must be non-negative");
    }
    return delta_E <= constants.planck_energy;
}

TwoLevelCollapseState collapse_step(const TwoLevelCollapseState& state, SeededRng& rng) {
    if (state.absorbed()) {
        throw StateError("cannot step an absorbed state");
    }
    TwoLevelCollapseState next = state;
    next.net_ = state.net_ + (rng.uniform01() < 0.5 ? -1 : 1);
    next.rho1 = next.measure_from_net();
    return next;
}

CollapseRun run_until_collapse(TwoLevelCollapseState state, SeededRng& rng,
                               std::int64_t max_steps) {
    CollapseRun run;
    while (!state.absorbed()) {
        if (run.steps >= max_steps) {
            run.timed_out = true;
            return run;
        }
        state = collapse_step(state, rng);
        ++run.steps;
    }
    run.outcome = state.rho1 == 1.0 ? Branch::branch1 : Branch::branch2;
    return run;
}

CollapseEnsembleStats collapse_ensemble(double delta_E, double rho1_0, std::int64_t trials,
                                        const PhysicalConstants& constants,
                                        std::uint64_t base_seed, Execution ex,
                                        std::int64_t max_steps) {
    if (trials < 1) {
        throw ConfigError("ensemble needs at least one trial");
    }
    const TwoLevelCollapseState initial(rho1_0, delta_E, constants);

    std::vector<double> steps(static_cast<std::size_t>(trials), 0.0);
    std::vector<unsigned char> to_branch1(static_cast<std::size_t>(trials), 0);
    std::vector<unsigned char> timed_out(static_cast<std::size_t>(trials), 0);
    for_each_index(trials, ex, [&](std::int64_t i) {
        SeededRng rng(SeededRng::derive(base_seed, static_cast<std::uint64_t>(i)));
        const CollapseRun run = run_until_collapse(initial, rng, max_steps);
        steps[static_cast<std::size_t>(i)] = static_cast<double>(run.steps);
        to_branch1[static_cast<std::size_t>(i)] = run.outcome == Branch::branch1 ? 1 : 0;
        timed_out[static_cast<std::size_t>(i)] = run.timed_out ? 1 : 0;
    });

    CollapseEnsembleStats stats;
    stats.trials = trials;
    CompensatedSum sum;
    std::int64_t absorbed_to_1 = 0;
    for (std::int64_t i = 0; i < trials; ++i) {
        sum.add(steps[static_cast<std::size_t>(i)]);
        absorbed_to_1 += to_branch1[static_cast<std::size_t>(i)];
        stats.timed_out += timed_out[static_cast<std::size_t>(i)];
    }
    stats.mean_steps = sum.value() / static_cast<double>(trials);
    CompensatedSum sq;
    for (double s : steps) {
        const double d = s - stats.mean_steps;
        sq.add(d * d);
    }
    if (trials > 1) {
        stats.stderr_steps = std::sqrt(sq.value() / (static_cast<double>(trials) *
                                                     static_cast<double>(trials - 1)));
    }
    stats.branch1_fraction = static_cast<double>(absorbed_to_1) / static_cast<double>(trials);
    return stats;
}

CollapseTime mean_collapse_time(double delta_E, double rho1_0, std::int64_t trials,
                                const PhysicalConstants& constants, SeededRng& rng,
                                Execution ex, std::int64_t max_steps) {
    if (trials < 100) {
        throw ConfigError("collapse time estimate needs at least 100 trials");
    }
    const std::uint64_t base_seed = rng.next_u64();
    const auto stats = collapse_ensemble(delta_E, rho1_0, trials, constants, base_seed, ex,
                                         max_steps);
    CollapseTime out;
    out.tau_c = stats.mean_steps * constants.planck_time;
    out.std_error = stats.stderr_steps * constants.planck_time;
    out.timed_out = stats.timed_out;
    return out;
}

}  // namespace dqm
