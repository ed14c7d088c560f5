#include "dqm/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "dqm/errors.hpp"
#include "dqm/measure.hpp"
#include "dqm/numeric.hpp"
#include "dqm/propagator.hpp"

namespace dqm {

std::uint64_t SeededRng::derive(std::uint64_t base_seed, std::uint64_t index) {
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CellSampler::CellSampler(const Grid1D& grid, std::span<const double> density) : grid_(grid) {
    const std::size_t n = static_cast<std::size_t>(grid.n_points);
    if (density.size() != n) {
        throw StateError("density size does not match the grid");
    }
    CompensatedSum total;
    for (double rho : density) {
        if (!(rho >= 0.0)) {
            throw NumericError("density has a negative or non-finite entry");
        }
        total.add(rho * grid.dx);
    }
    if (std::abs(total.value() - 1.0) > 1e-6) {
        throw NumericError("density is not normalised to unit mass");
    }

    cdf_.resize(n);
    left_.resize(n);
    CompensatedSum running;
    for (std::size_t i = 0; i < n; ++i) {
        running.add(density[i] * grid.dx);
        cdf_[i] = running.value();
        // Periodic cells tile [x_min, x_max); hard-wall cells are centred on
        // the interior sites.
        left_[i] = grid.boundary == Boundary::periodic
                       ? grid.x(static_cast<int>(i))
                       : grid.x(static_cast<int>(i)) - 0.5 * grid.dx;
    }
    cdf_.back() = 1.0;
}

double CellSampler::sample(SeededRng& rng) const {
    const double u = rng.uniform01();
    const double v = rng.uniform01();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t cell =
        std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    return left_[cell] + v * grid_.dx;
}

double sample_position(std::span<const double> rho, const Grid1D& grid, SeededRng& rng) {
    CellSampler sampler(grid, rho);
    return sampler.sample(rng);
}

PointSetTrajectory simulate_trajectory(const WaveFunction& psi0, const Hamiltonian1D& h,
                                       double t_final, int sample_every, SeededRng& rng) {
    if (sample_every < 1) {
        throw ConfigError("sample_every must be at least 1");
    }
    const Grid1D& grid = psi0.grid();
    const long long n_steps = std::llround(t_final / grid.dt);

    PointSetTrajectory traj;
    traj.x_min = grid.x_min;
    traj.x_max = grid.x_max;
    traj.source = "evolved state";
    traj.t.reserve(static_cast<std::size_t>(n_steps / sample_every + 1));
    traj.x.reserve(traj.t.capacity());

    WaveFunction state = psi0;
    CellSampler sampler(grid, position_density(state));
    traj.t.push_back(0.0);
    traj.x.push_back(sampler.sample(rng));
    for (long long k = 1; k <= n_steps; ++k) {
        state = step(state, h, static_cast<double>(k - 1) * grid.dt);
        if (k % sample_every == 0) {
            CellSampler at_t(grid, position_density(state));
            traj.t.push_back(static_cast<double>(k) * grid.dt);
            traj.x.push_back(at_t.sample(rng));
        }
    }
    return traj;
}

double discontinuity_statistic(const PointSetTrajectory& traj) {
    if (traj.x.size() < 2) {
        throw StateError("jump statistic needs at least two samples");
    }
    CompensatedSum sum;
    for (std::size_t k = 1; k < traj.x.size(); ++k) {
        sum.add(std::abs(traj.x[k] - traj.x[k - 1]));
    }
    return sum.value() / static_cast<double>(traj.x.size() - 1);
}

Histogram empirical_density(const PointSetTrajectory& traj, int n_bins) {
    if (n_bins < 2) {
        throw ConfigError("histogram needs at least two bins");
    }
    if (traj.x.empty()) {
        throw StateError("histogram needs at least one sample");
    }
    if (!(traj.x_max > traj.x_min)) {
        throw StateError("trajectory domain bounds are not set");
    }
    Histogram h;
    h.bin_width = (traj.x_max - traj.x_min) / n_bins;
    h.centers.resize(static_cast<std::size_t>(n_bins));
    h.density.assign(static_cast<std::size_t>(n_bins), 0.0);
    for (int b = 0; b < n_bins; ++b) {
        h.centers[static_cast<std::size_t>(b)] = traj.x_min + (b + 0.5) * h.bin_width;
    }
    for (double x : traj.x) {
        int b = static_cast<int>(std::floor((x - traj.x_min) / h.bin_width));
        b = std::clamp(b, 0, n_bins - 1);
        h.density[static_cast<std::size_t>(b)] += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(traj.x.size()) * h.bin_width);
    for (double& d : h.density) {
        d *= norm;
    }
    return h;
}

double l1_distance(const Histogram& hist, const Grid1D& grid, std::span<const double> rho) {
    const int n_bins = static_cast<int>(hist.centers.size());
    if (n_bins < 1 || !(hist.bin_width > 0.0)) {
        throw StateError("histogram is empty");
    }
    if (rho.size() != static_cast<std::size_t>(grid.n_points)) {
        throw StateError("density size does not match the grid");
    }
    const double origin = hist.centers.front() - 0.5 * hist.bin_width;

    // Expected mass per bin: each cell's mass spread uniformly over the cell,
    // split among the bins it intersects.
    std::vector<double> expected(static_cast<std::size_t>(n_bins), 0.0);
    for (int i = 0; i < grid.n_points; ++i) {
        const double lo = grid.boundary == Boundary::periodic
                              ? grid.x(i)
                              : grid.x(i) - 0.5 * grid.dx;
        const double hi = lo + grid.dx;
        const double linear_mass = rho[static_cast<std::size_t>(i)];
        int b = std::clamp(static_cast<int>(std::floor((lo - origin) / hist.bin_width)), 0,
                           n_bins - 1);
        while (b < n_bins) {
            const double bin_lo = origin + b * hist.bin_width;
            const double bin_hi = bin_lo + hist.bin_width;
            const double overlap = std::min(hi, bin_hi) - std::max(lo, bin_lo);
            if (overlap > 0.0) {
                expected[static_cast<std::size_t>(b)] += linear_mass * overlap;
            }
            if (bin_hi >= hi) {
                break;
            }
            ++b;
        }
    }

    CompensatedSum l1;
    for (int b = 0; b < n_bins; ++b) {
        l1.add(std::abs(hist.density[static_cast<std::size_t>(b)] * hist.bin_width -
                        expected[static_cast<std::size_t>(b)]));
    }
    return l1.value();
}

}  // namespace dqm
