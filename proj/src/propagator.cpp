#include "dqm/propagator.hpp"

#include <cmath>
#include <utility>

#include "dqm/errors.hpp"
#include "dqm/numeric.hpp"

namespace dqm {

Hamiltonian1D::Hamiltonian1D(Grid1D grid, double hbar, double mass, PotentialField potential)
    : grid_(grid), hbar_(hbar), mass_(mass), potential_(std::move(potential)) {
    if (!(hbar > 0.0) || !(mass > 0.0)) {
        throw ConfigError("Hamiltonian requires hbar > 0 and mass > 0");
    }
}

Tridiagonal Hamiltonian1D::assemble(double t) const {
    const int n = grid_.n_points;
    const double kinetic = hbar_ * hbar_ / (2.0 * mass_ * grid_.dx * grid_.dx);
    Tridiagonal h;
    h.lower.assign(static_cast<std::size_t>(n), std::complex<double>(-kinetic, 0.0));
    h.upper.assign(static_cast<std::size_t>(n), std::complex<double>(-kinetic, 0.0));
    h.diag.assign(static_cast<std::size_t>(n), std::complex<double>(2.0 * kinetic, 0.0));
    if (potential_) {
        for (int i = 0; i < n; ++i) {
            const double u = potential_(grid_.x(i), t);
            if (!std::isfinite(u)) {
                throw NumericError("potential produced a non-finite value");
            }
            h.diag[static_cast<std::size_t>(i)] += u;
        }
    }
    if (grid_.boundary == Boundary::periodic) {
        h.cyclic = true;
        h.corner_first_last = std::complex<double>(-kinetic, 0.0);
        h.corner_last_first = std::complex<double>(-kinetic, 0.0);
    }
    return h;
}

WaveFunction Hamiltonian1D::apply(const WaveFunction& psi, double t) const {
    if (psi.grid() != grid_) {
        throw StateError("state grid does not match the Hamiltonian grid");
    }
    return WaveFunction(grid_, assemble(t).apply(psi.amps()));
}

double Hamiltonian1D::expectation(const WaveFunction& psi, double t) const {
    return inner_product(psi, apply(psi, t)).real();
}

WaveFunction crank_nicolson_step(const WaveFunction& psi, const Tridiagonal& h_matrix,
                                 double dt, double hbar) {
    if (h_matrix.size() != static_cast<std::size_t>(psi.size())) {
        throw StateError("operator size does not match the state");
    }
    const std::complex<double> lam(0.0, dt / (2.0 * hbar));
    const std::size_t n = h_matrix.size();

    Tridiagonal plus;   // 1 + i dt/(2 hbar) H
    Tridiagonal minus;  // 1 - i dt/(2 hbar) H
    plus.cyclic = minus.cyclic = h_matrix.cyclic;
    plus.lower.resize(n);
    plus.diag.resize(n);
    plus.upper.resize(n);
    minus.lower.resize(n);
    minus.diag.resize(n);
    minus.upper.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        plus.lower[i] = lam * h_matrix.lower[i];
        plus.upper[i] = lam * h_matrix.upper[i];
        plus.diag[i] = 1.0 + lam * h_matrix.diag[i];
        minus.lower[i] = -plus.lower[i];
        minus.upper[i] = -plus.upper[i];
        minus.diag[i] = 1.0 - lam * h_matrix.diag[i];
    }
    plus.corner_first_last = lam * h_matrix.corner_first_last;
    plus.corner_last_first = lam * h_matrix.corner_last_first;
    minus.corner_first_last = -plus.corner_first_last;
    minus.corner_last_first = -plus.corner_last_first;

    auto rhs = minus.apply(psi.amps());
    return WaveFunction(psi.grid(), solve_tridiagonal(plus, rhs));
}

WaveFunction step(const WaveFunction& psi, const Hamiltonian1D& h, double t) {
    const double dt = h.grid().dt;
    return crank_nicolson_step(psi, h.assemble(t + 0.5 * dt), dt, h.hbar());
}

WaveFunction evolve(const WaveFunction& psi, const Hamiltonian1D& h, double t_final,
                    const Observer& observer, double t_start) {
    if (psi.grid() != h.grid()) {
        throw StateError("state grid does not match the Hamiltonian grid");
    }
    if (!(t_final >= 0.0)) {
        throw ConfigError("evolve requires t_final >= 0");
    }
    const double dt = h.grid().dt;
    const long long n_steps = std::llround(t_final / dt);
    WaveFunction state = psi;
    for (long long k = 0; k < n_steps; ++k) {
        state = step(state, h, t_start + static_cast<double>(k) * dt);
        if (observer) {
            observer(t_start + static_cast<double>(k + 1) * dt, state);
        }
    }
    return state;
}

WaveFunction analytic_free_gaussian(const Grid1D& grid, double x0, double sigma0, double p0,
                                    double t, double hbar, double mass) {
    if (!(sigma0 > 0.0)) {
        throw ConfigError("analytic packet requires sigma0 > 0");
    }
    const std::complex<double> beta(1.0, hbar * t / (2.0 * mass * sigma0 * sigma0));
    const double xc = x0 + p0 * t / mass;
    const double e0 = p0 * p0 / (2.0 * mass);
    const std::complex<double> inv_sqrt_beta = 1.0 / std::sqrt(beta);
    std::vector<std::complex<double>> a(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        const double d = x - xc;
        const std::complex<double> envelope =
            std::exp(-(d * d) / (4.0 * sigma0 * sigma0 * beta));
        const double phase = (p0 * x - e0 * t) / hbar;
        a[static_cast<std::size_t>(i)] =
            inv_sqrt_beta * envelope * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return WaveFunction(grid, std::move(a)).normalized();
}

}  // namespace dqm
