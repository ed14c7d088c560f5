#include "dqm/grid.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "dqm/errors.hpp"
#include "dqm/numeric.hpp"

namespace dqm {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid1D make_grid(double x_min, double x_max, int n_points, Boundary boundary, double dt) {
    if (!(x_max > x_min)) {
        throw ConfigError("grid requires x_max > x_min");
    }
    if (n_points < 8) {
        throw ConfigError("grid requires n_points >= 8");
    }
    if (boundary == Boundary::periodic && !is_power_of_two(n_points)) {
        throw ConfigError("periodic grid requires n_points to be a power of two");
    }
    if (!(dt > 0.0)) {
        throw ConfigError("grid requires dt > 0");
    }
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_points = n_points;
    g.boundary = boundary;
    g.dt = dt;
    g.dx = boundary == Boundary::periodic ? (x_max - x_min) / n_points
                                          : (x_max - x_min) / (n_points + 1);
    return g;
}

}  // namespace

Grid1D Grid1D::periodic(double x_min, double x_max, int n_points, double dt) {
    return make_grid(x_min, x_max, n_points, Boundary::periodic, dt);
}

Grid1D Grid1D::hard_wall(double x_min, double x_max, int n_points, double dt) {
    return make_grid(x_min, x_max, n_points, Boundary::hard_wall, dt);
}

WaveFunction::WaveFunction(Grid1D grid, std::vector<std::complex<double>> amps)
    : grid_(grid), amps_(std::move(amps)) {
    if (static_cast<int>(amps_.size()) != grid_.n_points) {
        throw StateError("amplitude count does not match grid point count");
    }
}

double WaveFunction::norm2() const {
    CompensatedSum s;
    for (const auto& a : amps_) {
        s.add(a.real() * a.real() + a.imag() * a.imag());
    }
    return s.value() * grid_.dx;
}

WaveFunction WaveFunction::normalized() const {
    const double n2 = norm2();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw NumericError("cannot normalize a state with zero or non-finite norm");
    }
    if (std::abs(n2 - 1.0) <= 1e-13) {
        return *this;
    }
    const double scale = 1.0 / std::sqrt(n2);
    std::vector<std::complex<double>> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        out[i] = amps_[i] * scale;
    }
    return WaveFunction(grid_, std::move(out));
}

WaveFunction gaussian_packet(const Grid1D& grid, double x0, double sigma, double p0,
                             double hbar) {
    if (!(sigma >= 3.0 * grid.dx)) {
        throw ConfigError("gaussian width must be at least 3 grid spacings");
    }
    if (grid.boundary == Boundary::hard_wall &&
        (x0 - grid.x_min < 5.0 * sigma || grid.x_max - x0 < 5.0 * sigma)) {
        throw ConfigError("gaussian center must sit at least 5 sigma from a hard wall");
    }
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        const double d = x - x0;
        const double envelope = std::exp(-d * d / (4.0 * sigma * sigma));
        const double phase = p0 * x / hbar;
        amps[static_cast<std::size_t>(i)] =
            envelope * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return WaveFunction(grid, std::move(amps)).normalized();
}

WaveFunction plane_wave(const Grid1D& grid, int k_index, double hbar) {
    if (grid.boundary != Boundary::periodic) {
        throw ConfigError("plane waves require a periodic grid");
    }
    if (2 * std::abs(k_index) >= grid.n_points) {
        throw ConfigError("plane-wave index must satisfy |k_index| < n_points/2");
    }
    const double length = grid.length();
    const double p = 2.0 * std::numbers::pi * hbar * k_index / length;
    const double amp = 1.0 / std::sqrt(length);
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        const double phase = p * grid.x(i) / hbar;
        amps[static_cast<std::size_t>(i)] =
            amp * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return WaveFunction(grid, std::move(amps));
}

Eigenstate well_eigenstate(const Grid1D& grid, int n, double hbar, double mass) {
    if (grid.boundary != Boundary::hard_wall) {
        throw ConfigError("well eigenstates require a hard-wall grid");
    }
    if (n < 1 || 4 * n > grid.n_points) {
        throw ConfigError("well quantum number must satisfy 1 <= n <= n_points/4");
    }
    const double length = grid.length();
    const double amp = std::sqrt(2.0 / length);
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        amps[static_cast<std::size_t>(i)] =
            amp * std::sin(n * std::numbers::pi * (grid.x(i) - grid.x_min) / length);
    }
    const double kn = n * std::numbers::pi / length;
    const double energy = hbar * hbar * kn * kn / (2.0 * mass);
    return {WaveFunction(grid, std::move(amps)).normalized(), energy};
}

std::complex<double> inner_product(const WaveFunction& a, const WaveFunction& b) {
    if (a.grid() != b.grid()) {
        throw StateError("inner product requires both states on the same grid");
    }
    CompensatedSum re, im;
    for (int i = 0; i < a.size(); ++i) {
        const std::complex<double> term = std::conj(a[i]) * b[i];
        re.add(term.real());
        im.add(term.imag());
    }
    return std::complex<double>(re.value(), im.value()) * a.grid().dx;
}

}  // namespace dqm
