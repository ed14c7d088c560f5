#include "dqm/measure.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "dqm/errors.hpp"
#include "dqm/numeric.hpp"
#include "fft.hpp"

namespace dqm {
namespace {

// Central difference, boundary aware: periodic wraps, hard wall sees zero
// amplitude at the virtual sites beyond each end.
std::vector<std::complex<double>> central_derivative(const Grid1D& grid,
                                                     std::span<const std::complex<double>> a) {
    const int n = static_cast<int>(a.size());
    const double inv2dx = 1.0 / (2.0 * grid.dx);
    std::vector<std::complex<double>> d(static_cast<std::size_t>(n));
    const bool periodic = grid.boundary == Boundary::periodic;
    for (int i = 0; i < n; ++i) {
        std::complex<double> right{0.0, 0.0};
        std::complex<double> left{0.0, 0.0};
        if (i + 1 < n) {
            right = a[static_cast<std::size_t>(i + 1)];
        } else if (periodic) {
            right = a[0];
        }
        if (i > 0) {
            left = a[static_cast<std::size_t>(i - 1)];
        } else if (periodic) {
            left = a[static_cast<std::size_t>(n - 1)];
        }
        d[static_cast<std::size_t>(i)] = (right - left) * inv2dx;
    }
    return d;
}

std::vector<double> flux_from_amps(const Grid1D& grid,
                                   std::span<const std::complex<double>> a, double hbar,
                                   double mass) {
    const auto d = central_derivative(grid, a);
    const double scale = hbar / mass;
    std::vector<double> j(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        j[i] = scale * (std::conj(a[i]) * d[i]).imag();
    }
    return j;
}

}  // namespace

std::vector<double> position_density(const WaveFunction& psi) {
    std::vector<double> rho(static_cast<std::size_t>(psi.size()));
    for (int i = 0; i < psi.size(); ++i) {
        rho[static_cast<std::size_t>(i)] = std::norm(psi[i]);
    }
    return rho;
}

std::vector<double> flux_density(const WaveFunction& psi, double hbar, double mass) {
    return flux_from_amps(psi.grid(), psi.amps(), hbar, mass);
}

MeasureField measure_field(const WaveFunction& psi, double hbar, double mass) {
    return {psi.grid(), position_density(psi), flux_density(psi, hbar, mass)};
}

double continuity_residual(const WaveFunction& before, const WaveFunction& after,
                           double dt, double hbar, double mass) {
    if (before.grid() != after.grid()) {
        throw StateError("continuity residual requires both states on the same grid");
    }
    if (!(dt > 0.0)) {
        throw ConfigError("continuity residual requires dt > 0");
    }
    const int n = before.size();
    std::vector<std::complex<double>> mid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        mid[static_cast<std::size_t>(i)] = 0.5 * (before[i] + after[i]);
    }
    const auto j_mid = flux_from_amps(before.grid(), mid, hbar, mass);

    // d(j)/dx by the same central difference used for the flux itself.
    const Grid1D& grid = before.grid();
    const bool periodic = grid.boundary == Boundary::periodic;
    const double inv2dx = 1.0 / (2.0 * grid.dx);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double right = 0.0, left = 0.0;
        if (i + 1 < n) {
            right = j_mid[static_cast<std::size_t>(i + 1)];
        } else if (periodic) {
            right = j_mid[0];
        }
        if (i > 0) {
            left = j_mid[static_cast<std::size_t>(i - 1)];
        } else if (periodic) {
            left = j_mid[static_cast<std::size_t>(n - 1)];
        }
        const double drho_dt = (std::norm(after[i]) - std::norm(before[i])) / dt;
        const double div_j = (right - left) * inv2dx;
        worst = std::max(worst, std::abs(drho_dt + div_j));
    }
    return worst;
}

MomentumState to_momentum(const WaveFunction& psi, double t, double hbar, double mass) {
    const Grid1D& grid = psi.grid();
    if (grid.boundary != Boundary::periodic) {
        throw ConfigError("momentum transform requires a periodic grid");
    }
    const int n = grid.n_points;
    const double length = grid.length();
    const double dp = 2.0 * std::numbers::pi * hbar / length;
    const double scale = std::sqrt(grid.dx / dp) / std::sqrt(static_cast<double>(n));

    std::vector<std::complex<double>> work(psi.amps().begin(), psi.amps().end());
    detail::fft_radix2(work, false);

    MomentumState ms;
    ms.grid = grid;
    ms.hbar = hbar;
    ms.mass = mass;
    ms.p.resize(static_cast<std::size_t>(n));
    ms.phi.resize(static_cast<std::size_t>(n));
    ms.f.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int k_centered = k - n / 2;
        const double p = dp * k_centered;
        const std::size_t src = static_cast<std::size_t>((k_centered + n) % n);
        // strip the grid offset phase and, at t != 0, the free dispersion
        const double phase = (-p * grid.x_min + p * p * t / (2.0 * mass)) / hbar;
        ms.p[static_cast<std::size_t>(k)] = p;
        ms.phi[static_cast<std::size_t>(k)] =
            work[src] * scale * std::complex<double>(std::cos(phase), std::sin(phase));
        ms.f[static_cast<std::size_t>(k)] = std::norm(ms.phi[static_cast<std::size_t>(k)]);
    }
    return ms;
}

WaveFunction to_position(const MomentumState& ms, double t) {
    const Grid1D& grid = ms.grid;
    const int n = grid.n_points;
    if (static_cast<int>(ms.phi.size()) != n) {
        throw StateError("momentum state size does not match its grid");
    }
    const double scale = std::sqrt(ms.dp() / grid.dx) / std::sqrt(static_cast<double>(n));

    std::vector<std::complex<double>> work(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int k_centered = k - n / 2;
        const double p = ms.p[static_cast<std::size_t>(k)];
        const std::size_t dst = static_cast<std::size_t>((k_centered + n) % n);
        const double phase = (p * grid.x_min - p * p * t / (2.0 * ms.mass)) / ms.hbar;
        work[dst] = ms.phi[static_cast<std::size_t>(k)] *
                    std::complex<double>(std::cos(phase), std::sin(phase));
    }
    detail::fft_radix2(work, true);
    for (auto& v : work) {
        v *= scale;
    }
    return WaveFunction(grid, std::move(work));
}

}  // namespace dqm
