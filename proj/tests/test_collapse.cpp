#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "dqm/collapse.hpp"
#include "dqm/constants.hpp"
#include "dqm/errors.hpp"

using namespace dqm;

namespace {

// First-passage oracle for the clamped +-s walk, computed independently from
// the chain structure. Down-steps absorb after ceil(rho0/s) net moves and
// up-steps after ceil((1-rho0)/s); the expected absorption time of the
// unbiased integer walk between those barriers is their product. When both
// ratios are integers this equals rho0 (1 - rho0) / s^2.
std::int64_t barrier_steps(double measure, double s) {
    const double q = measure / s;
    return static_cast<std::int64_t>(std::ceil(q - 1e-9));
}

double oracle_mean_steps(double rho0, double s) {
    return static_cast<double>(barrier_steps(rho0, s)) *
           static_cast<double>(barrier_steps(1.0 - rho0, s));
}

double oracle_branch1_probability(double rho0, double s) {
    const double down = static_cast<double>(barrier_steps(rho0, s));
    const double up = static_cast<double>(barrier_steps(1.0 - rho0, s));
    return down / (down + up);
}

}  // namespace

TEST_CASE("oscillation period is hbar over the gap") {
    CHECK(oscillation_period(1.0, 1.0) == 1.0);
    CHECK(oscillation_period(0.6, 1.0) == 2.0 * oscillation_period(1.2, 1.0));
    const PhysicalConstants natural = PhysicalConstants::natural();
    CHECK(oscillation_period(natural.planck_energy, natural.hbar) == natural.planck_time);
    const PhysicalConstants si = PhysicalConstants::si();
    CHECK(oscillation_period(si.planck_energy, si.hbar) ==
          doctest::Approx(si.planck_time).epsilon(1e-15).scale(0.0));
    CHECK_THROWS_AS(oscillation_period(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(oscillation_period(-1.0, 1.0), ConfigError);
}

TEST_CASE("admissibility is inclusive at the Planck energy") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    CHECK(superposition_admissible(0.5, natural));
    CHECK(superposition_admissible(1.0, natural));   // boundary included
    CHECK(superposition_admissible(0.0, natural));   // degenerate gap
    CHECK_FALSE(superposition_admissible(2.0, natural));
    CHECK_THROWS_AS(superposition_admissible(-0.1, natural), ConfigError);
}

TEST_CASE("state construction validates measure and gap") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    const TwoLevelCollapseState ok(0.5, 0.1, natural);
    CHECK(ok.step_size == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_FALSE(ok.absorbed());
    CHECK(TwoLevelCollapseState(1.0, 0.1, natural).absorbed());
    CHECK(TwoLevelCollapseState(0.0, 0.1, natural).absorbed());
    CHECK_THROWS_AS(TwoLevelCollapseState(-0.1, 0.1, natural), ConfigError);
    CHECK_THROWS_AS(TwoLevelCollapseState(1.1, 0.1, natural), ConfigError);
    CHECK_THROWS_AS(TwoLevelCollapseState(0.5, 0.0, natural), ConfigError);
    CHECK_THROWS_AS(TwoLevelCollapseState(0.5, 2.0, natural), ConfigError);  // above E_p
}

TEST_CASE("single steps move the measure by exactly the step size") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    const TwoLevelCollapseState state(0.5, 0.1, natural);
    bool up_seen = false, down_seen = false;
    for (int k = 0; k < 100; ++k) {
        SeededRng fresh(SeededRng::derive(17, static_cast<std::uint64_t>(k)));
        const TwoLevelCollapseState next = collapse_step(state, fresh);
        if (next.rho1 == 0.6) up_seen = true;
        if (next.rho1 == 0.4) down_seen = true;
        CHECK((next.rho1 == 0.6 || next.rho1 == 0.4));
    }
    CHECK(up_seen);
    CHECK(down_seen);
}

TEST_CASE("walks land exactly on the barriers when the lattice allows") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    SeededRng rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        TwoLevelCollapseState state(0.5, 0.1, natural);
        while (!state.absorbed()) {
            state = collapse_step(state, rng);
        }
        CHECK((state.rho1 == 0.0 || state.rho1 == 1.0));
    }
}

TEST_CASE("stepping an absorbed state is an error") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    SeededRng rng(3);
    TwoLevelCollapseState done(1.0, 0.1, natural);
    CHECK_THROWS_AS(collapse_step(done, rng), StateError);
}

TEST_CASE("a half step size forces absorption in one step") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    SeededRng rng(41);
    const TwoLevelCollapseState state(0.5, 0.5, natural);
    for (int k = 0; k < 20; ++k) {
        const TwoLevelCollapseState next = collapse_step(state, rng);
        CHECK((next.rho1 == 0.0 || next.rho1 == 1.0));
    }
}

TEST_CASE("an absorbed input collapses in zero steps") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    SeededRng rng(1);
    const CollapseRun one = run_until_collapse(TwoLevelCollapseState(1.0, 0.1, natural),
                                               rng, 1000);
    CHECK(one.steps == 0);
    CHECK(one.outcome == Branch::branch1);
    const CollapseRun zero = run_until_collapse(TwoLevelCollapseState(0.0, 0.1, natural),
                                                rng, 1000);
    CHECK(zero.steps == 0);
    CHECK(zero.outcome == Branch::branch2);
}

TEST_CASE("exceeding max_steps reports a timeout instead of absorbing") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    SeededRng rng(8);
    const CollapseRun run = run_until_collapse(TwoLevelCollapseState(0.5, 0.001, natural),
                                               rng, 50);
    CHECK(run.timed_out);
    CHECK(run.steps == 50);
    CHECK(run.outcome == Branch::none);
}

TEST_CASE("empirical mean increment of single steps vanishes") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    const TwoLevelCollapseState state(0.5, 0.1, natural);
    SeededRng rng(1001);
    const int n = 100000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += collapse_step(state, rng).rho1 - state.rho1;
    }
    const double mean = sum / n;
    const double band = 3.0 * state.step_size / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean) < band);
}

TEST_CASE("monte carlo means match the first-passage oracle") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    struct Case {
        double rho0, s;
    };
    // (0.5, 0.1) and (0.25, 0.01) have on-lattice barriers; (0.25, 0.1) does
    // not, which shifts the true mean from 18.75 to 24.
    for (const Case c : {Case{0.5, 0.1}, Case{0.25, 0.01}, Case{0.25, 0.1}}) {
        const auto stats = collapse_ensemble(c.s, c.rho0, 6000, natural, 555);
        const double expected = oracle_mean_steps(c.rho0, c.s);
        CHECK(std::abs(stats.mean_steps - expected) < 3.0 * stats.stderr_steps);
        const double p1 = oracle_branch1_probability(c.rho0, c.s);
        const double band = 3.0 * std::sqrt(p1 * (1.0 - p1) / 6000.0);
        CHECK(std::abs(stats.branch1_fraction - p1) < band);
        CHECK(stats.timed_out == 0);
    }
    // Integer-ratio case agrees with the continuum form rho (1 - rho) / s^2.
    CHECK(oracle_mean_steps(0.5, 0.1) == 25.0);
    CHECK(oracle_mean_steps(0.25, 0.01) == 1875.0);
    CHECK(oracle_mean_steps(0.25, 0.1) == 24.0);
}

TEST_CASE("collapse time scales as the inverse square of the gap") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    double gaps[3] = {0.25, 0.125, 0.0625};
    double taus[3];
    for (int i = 0; i < 3; ++i) {
        SeededRng rng(900 + static_cast<std::uint64_t>(i));
        const CollapseTime t = mean_collapse_time(gaps[i], 0.5, 3000, natural, rng);
        taus[i] = t.tau_c;
        // Dyadic lattices are exact: the oracle mean is (rho0/s)^2 steps.
        const double expected = oracle_mean_steps(0.5, gaps[i]) * natural.planck_time;
        CHECK(std::abs(t.tau_c - expected) < 3.0 * t.std_error);
    }
    const double slope = std::log(taus[2] / taus[0]) / std::log(gaps[2] / gaps[0]);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.05));
}

TEST_CASE("collapse time bookkeeping") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    SeededRng rng(77);
    CHECK_THROWS_AS(mean_collapse_time(0.1, 0.5, 99, natural, rng), ConfigError);

    // Consuming the same stream reproduces the ensemble exactly.
    SeededRng a(123);
    const std::uint64_t base = SeededRng(123).next_u64();
    const CollapseTime t = mean_collapse_time(0.1, 0.5, 500, natural, a);
    const auto stats = collapse_ensemble(0.1, 0.5, 500, natural, base);
    CHECK(t.tau_c == stats.mean_steps * natural.planck_time);
    CHECK(t.std_error == stats.stderr_steps * natural.planck_time);
}

TEST_CASE("ensemble requires at least one trial") {
    const PhysicalConstants natural = PhysicalConstants::natural();
    CHECK_THROWS_AS(collapse_ensemble(0.1, 0.5, 0, natural, 1), ConfigError);
}
