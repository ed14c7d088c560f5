#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dqm/errors.hpp"
#include "dqm/grid.hpp"
#include "dqm/measure.hpp"
#include "dqm/numeric.hpp"
#include "dqm/propagator.hpp"
#include "dqm/sampler.hpp"

using namespace dqm;

TEST_CASE("identical seeds reproduce the draw sequence exactly") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 64, 0.01);
    const WaveFunction psi = plane_wave(grid, 0);
    const std::vector<double> rho = position_density(psi);
    SeededRng a(123), b(123), c(124);
    const CellSampler sampler(grid, rho);
    bool all_equal = true, any_differs = false;
    for (int k = 0; k < 1000; ++k) {
        const double xa = sampler.sample(a);
        all_equal = all_equal && (xa == sampler.sample(b));
        any_differs = any_differs || (xa != sampler.sample(c));
    }
    CHECK(all_equal);
    CHECK(any_differs);
}

TEST_CASE("derived streams are decorrelated by index") {
    CHECK(SeededRng::derive(42, 0) != SeededRng::derive(42, 1));
    CHECK(SeededRng::derive(42, 0) != SeededRng::derive(43, 0));
    // Stable across calls: pure function of (seed, index).
    CHECK(SeededRng::derive(42, 7) == SeededRng::derive(42, 7));
}

TEST_CASE("draws from a single-cell density stay inside that cell") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 16, 0.01);
    std::vector<double> rho(16, 0.0);
    rho[5] = 1.0 / grid.dx;  // all mass in cell 5: [5 dx, 6 dx)
    SeededRng rng(9);
    const CellSampler sampler(grid, rho);
    double lo = 1.0, hi = 0.0;
    for (int k = 0; k < 5000; ++k) {
        const double x = sampler.sample(rng);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    CHECK(lo >= 5 * grid.dx);
    CHECK(hi < 6 * grid.dx);
    CHECK(hi - lo > 0.5 * grid.dx);  // spread within the cell, not a point
}

TEST_CASE("uniform draws pass a chi-square test") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 128, 0.01);
    const std::vector<double> rho = position_density(plane_wave(grid, 0));
    SeededRng rng(2024);
    const CellSampler sampler(grid, rho);
    const int n_bins = 100;
    const int n_draws = 1000000;
    std::vector<int> counts(n_bins, 0);
    for (int k = 0; k < n_draws; ++k) {
        const int b = std::min(n_bins - 1, static_cast<int>(sampler.sample(rng) * n_bins));
        ++counts[static_cast<std::size_t>(b)];
    }
    const double expected = static_cast<double>(n_draws) / n_bins;
    double chi2 = 0.0;
    for (int c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // Two-sided 99.9% band of chi-square with 99 degrees of freedom.
    CHECK(chi2 > 59.12818798991772);
    CHECK(chi2 < 151.93401121930782);
}

TEST_CASE("sampler rejects bad densities") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 16, 0.01);
    std::vector<double> wrong_size(15, 1.0);
    CHECK_THROWS_AS(CellSampler(grid, wrong_size), StateError);
    std::vector<double> negative(16, 1.0);
    negative[3] = -0.5;
    CHECK_THROWS_AS(CellSampler(grid, negative), NumericError);
    std::vector<double> unnormalised(16, 2.0);  // mass 2
    CHECK_THROWS_AS(CellSampler(grid, unnormalised), NumericError);
}

TEST_CASE("uniform-state trajectories jump 1/3 on average, at any sampling stride") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 64, 0.01);
    const WaveFunction psi = plane_wave(grid, 0);
    Hamiltonian1D h(grid, 1.0, 1.0, {});
    for (int stride : {1, 5}) {
        const int n_jumps = 20000;
        SeededRng rng(77);
        const PointSetTrajectory traj =
            simulate_trajectory(psi, h, n_jumps * stride * grid.dt, stride, rng);
        REQUIRE(static_cast<int>(traj.x.size()) == n_jumps + 1);
        const double mean = discontinuity_statistic(traj);
        // Var of the mean jump is about 1/(15 M) including the
        // shared-endpoint covariance of adjacent jumps.
        const double band = 3.0 / std::sqrt(15.0 * n_jumps);
        CHECK(std::abs(mean - 1.0 / 3.0) < band);
    }
}

TEST_CASE("a point-like density cannot jump farther than its cell") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 64, 0.01);
    std::vector<double> rho(64, 0.0);
    rho[10] = 1.0 / grid.dx;
    SeededRng rng(5);
    const CellSampler sampler(grid, rho);
    PointSetTrajectory traj;
    traj.x_min = grid.x_min;
    traj.x_max = grid.x_max;
    for (int k = 0; k < 2000; ++k) {
        traj.t.push_back(k * grid.dt);
        traj.x.push_back(sampler.sample(rng));
    }
    CHECK(discontinuity_statistic(traj) < grid.dx);
}

TEST_CASE("histogram density integrates to one") {
    const Grid1D grid = Grid1D::hard_wall(0.0, 1.0, 200, 0.01);
    const WaveFunction psi = well_eigenstate(grid, 1).state;
    SeededRng rng(31);
    const CellSampler sampler(grid, position_density(psi));
    PointSetTrajectory traj;
    traj.x_min = grid.x_min;
    traj.x_max = grid.x_max;
    for (int k = 0; k < 40000; ++k) {
        traj.t.push_back(static_cast<double>(k));
        traj.x.push_back(sampler.sample(rng));
    }
    const Histogram hist = empirical_density(traj, 37);
    CompensatedSum mass;
    for (double d : hist.density) mass.add(d);
    CHECK(mass.value() * hist.bin_width == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a million well-ground draws reproduce the density to L1 < 0.01") {
    const Grid1D grid = Grid1D::hard_wall(0.0, 1.0, 200, 0.01);
    const std::vector<double> rho = position_density(well_eigenstate(grid, 1).state);
    SeededRng rng(4242);
    const CellSampler sampler(grid, rho);
    PointSetTrajectory traj;
    traj.x_min = grid.x_min;
    traj.x_max = grid.x_max;
    const int n = 1000000;
    traj.t.reserve(n);
    traj.x.reserve(n);
    for (int k = 0; k < n; ++k) {
        traj.t.push_back(static_cast<double>(k));
        traj.x.push_back(sampler.sample(rng));
    }
    const Histogram hist = empirical_density(traj, 50);
    CHECK(l1_distance(hist, grid, rho) < 0.01);
}

TEST_CASE("perfectly placed draws have zero L1 against the uniform density") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 16, 0.01);
    const std::vector<double> rho(16, 1.0);
    PointSetTrajectory traj;
    traj.x_min = 0.0;
    traj.x_max = 1.0;
    for (double x : {0.125, 0.375, 0.625, 0.875}) {
        traj.t.push_back(0.0);
        traj.x.push_back(x);
    }
    const Histogram hist = empirical_density(traj, 2);
    CHECK(l1_distance(hist, grid, rho) < 1e-15);
}

TEST_CASE("trajectory sampling is deterministic and validates its stride") {
    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 32, 0.01);
    const WaveFunction psi = plane_wave(grid, 0);
    Hamiltonian1D h(grid, 1.0, 1.0, {});
    SeededRng r1(6), r2(6);
    const PointSetTrajectory a = simulate_trajectory(psi, h, 50 * grid.dt, 1, r1);
    const PointSetTrajectory b = simulate_trajectory(psi, h, 50 * grid.dt, 1, r2);
    CHECK(a.x == b.x);
    CHECK(a.t == b.t);

    SeededRng r3(6);
    CHECK_THROWS_AS(simulate_trajectory(psi, h, 1.0, 0, r3), ConfigError);
}

TEST_CASE("degenerate statistics inputs are rejected") {
    PointSetTrajectory traj;
    traj.x_min = 0.0;
    traj.x_max = 1.0;
    traj.t.push_back(0.0);
    traj.x.push_back(0.5);
    CHECK_THROWS_AS(discontinuity_statistic(traj), StateError);
    CHECK_THROWS_AS(empirical_density(traj, 1), ConfigError);

    PointSetTrajectory empty;
    empty.x_min = 0.0;
    empty.x_max = 1.0;
    CHECK_THROWS_AS(empirical_density(empty, 10), StateError);

    const Grid1D grid = Grid1D::periodic(0.0, 1.0, 16, 0.01);
    std::vector<double> rho(16, 1.0);
    const Histogram none{};
    CHECK_THROWS_AS(l1_distance(none, grid, rho), StateError);
}
