#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dqm/grid.hpp"

namespace dqm {

/// Deterministic RNG: mt19937_64 with 53-bit uniforms. Streams for parallel
/// work are derived from a base seed and an index so that results do not
/// depend on scheduling.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Stream seed for work item `index`; splitmix64 over (seed, index) keeps
    /// derived streams decorrelated without coordination.
    static std::uint64_t derive(std::uint64_t base_seed, std::uint64_t index);

private:
    std::mt19937_64 engine_;
};

/// Draws positions from a piecewise-constant density on grid cells. The cell
/// for a draw comes from inverting the cumulative weight; the position is then
/// uniform within the cell. Two uniforms are consumed per draw.
class CellSampler {
public:
    CellSampler(const Grid1D& grid, std::span<const double> density);

    double sample(SeededRng& rng) const;

    const Grid1D& grid() const { return grid_; }

private:
    Grid1D grid_;
    std::vector<double> cdf_;   // cumulative cell mass, cdf_.back() == 1
    std::vector<double> left_;  // left edge of each cell
};

double sample_position(std::span<const double> rho, const Grid1D& grid, SeededRng& rng);

/// A recorded point set: bare (t, x) samples plus enough provenance to bin
/// them later. There is no path between consecutive points.
struct PointSetTrajectory {
    std::vector<double> t;
    std::vector<double> x;
    double x_min = 0.0;
    double x_max = 0.0;
    std::string source;
};

class Hamiltonian1D;

/// Evolves psi0 under h, drawing one independent position from the current
/// density at t = 0 and then after every `sample_every` steps. Consecutive
/// draws are uncorrelated by construction; the point set has no path.
PointSetTrajectory simulate_trajectory(const WaveFunction& psi0, const Hamiltonian1D& h,
                                       double t_final, int sample_every, SeededRng& rng);

/// Mean absolute jump |x_{k+1} - x_k| between consecutive samples. Needs at
/// least two samples.
double discontinuity_statistic(const PointSetTrajectory& traj);

struct Histogram {
    std::vector<double> centers;
    std::vector<double> density;  // normalised so sum(density) * bin_width == 1
    double bin_width = 0.0;
};

Histogram empirical_density(const PointSetTrajectory& traj, int n_bins);

/// L1 distance between a histogram and a piecewise-constant grid density,
/// comparing per-bin masses. Cell mass is apportioned to bins by overlap
/// length, so bins need not align with cells.
double l1_distance(const Histogram& hist, const Grid1D& grid, std::span<const double> rho);

}  // namespace dqm
