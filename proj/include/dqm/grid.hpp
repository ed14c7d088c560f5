#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace dqm {

enum class Boundary { periodic, hard_wall };

/// Uniform 1D lattice plus the time step used to evolve states on it.
///
/// periodic:  n_points sites at x_min + i*dx, dx = (x_max - x_min)/n_points,
///            site n wraps to site 0. n_points must be a power of two.
/// hard_wall: n_points interior sites at x_min + (i+1)*dx,
///            dx = (x_max - x_min)/(n_points + 1); the amplitude at the
///            virtual sites x_min and x_max is identically zero.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_points = 0;
    Boundary boundary = Boundary::periodic;
    double dt = 0.0;
    double dx = 0.0;

    static Grid1D periodic(double x_min, double x_max, int n_points, double dt);
    static Grid1D hard_wall(double x_min, double x_max, int n_points, double dt);

    double x(int i) const {
        return boundary == Boundary::periodic ? x_min + i * dx : x_min + (i + 1) * dx;
    }
    double length() const { return x_max - x_min; }

    bool operator==(const Grid1D&) const = default;
};

/// Complex amplitudes on a Grid1D. Values are immutable snapshots; every
/// operation returns a new state.
class WaveFunction {
public:
    WaveFunction(Grid1D grid, std::vector<std::complex<double>> amps);

    const Grid1D& grid() const { return grid_; }
    int size() const { return static_cast<int>(amps_.size()); }
    std::span<const std::complex<double>> amps() const { return amps_; }
    const std::complex<double>& operator[](int i) const { return amps_[static_cast<std::size_t>(i)]; }

    /// sum |a_i|^2 dx, compensated summation.
    double norm2() const;

    /// Rescaled to norm2() == 1. A state already within 1e-13 of unit norm
    /// is returned unchanged, which makes normalization idempotent
    /// bit-for-bit.
    WaveFunction normalized() const;

private:
    Grid1D grid_;
    std::vector<std::complex<double>> amps_;
};

/// Potential energy sampled as U(x, t).
using PotentialField = std::function<double(double x, double t)>;

/// Normalized Gaussian exp(-(x-x0)^2/(4 sigma^2)) exp(i p0 x / hbar).
/// Requires sigma >= 3 dx, and on hard-wall grids x0 at least 5 sigma from
/// either wall.
WaveFunction gaussian_packet(const Grid1D& grid, double x0, double sigma, double p0,
                             double hbar = 1.0);

/// exp(i p x)/sqrt(L) with p = 2 pi hbar k_index / L on a periodic grid.
/// The position density is exactly uniform.
WaveFunction plane_wave(const Grid1D& grid, int k_index, double hbar = 1.0);

struct Eigenstate {
    WaveFunction state;
    double energy;
};

/// n-th stationary state of the hard-wall box: sqrt(2/L) sin(n pi (x-x_min)/L),
/// E_n = n^2 pi^2 hbar^2 / (2 m L^2). Requires 1 <= n <= n_points/4.
Eigenstate well_eigenstate(const Grid1D& grid, int n, double hbar = 1.0, double mass = 1.0);

/// sum conj(a_i) b_i dx. Throws StateError on grid mismatch.
std::complex<double> inner_product(const WaveFunction& a, const WaveFunction& b);

}  // namespace dqm
