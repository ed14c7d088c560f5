#include "dqm/protective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "dqm/eigensolver.hpp"
#include "dqm/errors.hpp"
#include "dqm/numeric.hpp"

namespace dqm {
namespace {

using cdouble = std::complex<double>;

double projector_value(const RegionPartition& partition, int n, int cell) {
    const auto& r = partition.regions[static_cast<std::size_t>(n)];
    return (cell >= r.first && cell <= r.last)
               ? 1.0 / partition.volumes[static_cast<std::size_t>(n)]
               : 0.0;
}

// <psi| diag(a) |psi> for a real multiplication operator.
double diag_expectation(const WaveFunction& psi, std::span<const double> a) {
    CompensatedSum sum;
    for (int i = 0; i < psi.size(); ++i) {
        sum.add(a[static_cast<std::size_t>(i)] * std::norm(psi[i]));
    }
    return sum.value() * psi.grid().dx;
}

// Hermitian flux operator for the region: (hbar/m) * (1/2i)(A d/dx + d/dx A)
// with the central-difference derivative. Purely off-diagonal.
Tridiagonal flux_operator(const RegionPartition& partition, int n, double hbar, double mass) {
    const Grid1D& grid = partition.grid;
    const int m = grid.n_points;
    const double scale = hbar / (mass * 4.0 * grid.dx);
    Tridiagonal op;
    op.lower.assign(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
    op.diag.assign(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
    op.upper.assign(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
    std::vector<double> a(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        a[static_cast<std::size_t>(i)] = projector_value(partition, n, i);
    }
    for (int i = 0; i + 1 < m; ++i) {
        const double s = scale * (a[static_cast<std::size_t>(i)] +
                                  a[static_cast<std::size_t>(i + 1)]);
        op.upper[static_cast<std::size_t>(i)] = cdouble(0.0, -s);
        op.lower[static_cast<std::size_t>(i + 1)] = cdouble(0.0, s);
    }
    if (grid.boundary == Boundary::periodic) {
        const double s = scale * (a[0] + a[static_cast<std::size_t>(m - 1)]);
        op.cyclic = true;
        op.corner_first_last = cdouble(0.0, s);    // A(0, m-1) = +i s
        op.corner_last_first = cdouble(0.0, -s);   // A(m-1, 0) = -i s
    }
    return op;
}

double hermitian_expectation(const WaveFunction& psi, const Tridiagonal& op) {
    const auto out = op.apply(psi.amps());
    CompensatedSum re;
    for (int i = 0; i < psi.size(); ++i) {
        re.add((std::conj(psi[i]) * out[static_cast<std::size_t>(i)]).real());
    }
    return re.value() * psi.grid().dx;
}

struct ShiftAccumulator {
    CompensatedSum weighted_value;
    CompensatedSum weighted_g;

    void add(double w, double g, double value) {
        weighted_g.add(w * g);
        weighted_value.add(w * g * value);
    }

    double shift() const { return weighted_value.value() / weighted_g.value(); }
};

// Shared adiabatic driver: evolve under H + g(t) P Op, integrating the
// g-weighted expectation of Op by the trapezoid rule over step boundaries.
ShiftResult driven_shift(const ProtectiveSetup& setup, const Tridiagonal& op,
                         double exact_value, double coupling_scale) {
    const Hamiltonian1D& h = setup.hamiltonian();
    const Grid1D& grid = h.grid();
    const double dt = grid.dt;
    const long long n_steps = std::llround(setup.duration() / dt);
    if (n_steps < 2) {
        throw ConfigError("measurement duration resolves to fewer than two steps");
    }
    const double p = setup.pointer_momentum();

    WaveFunction psi = setup.state();
    const WaveFunction psi0 = psi;

    ShiftAccumulator acc;
    acc.add(0.5 * dt, setup.g(0.0), hermitian_expectation(psi, op));
    for (long long k = 0; k < n_steps; ++k) {
        const double t_mid = (static_cast<double>(k) + 0.5) * dt;
        Tridiagonal coupled = h.assemble(t_mid);
        const double lambda = setup.g(t_mid) * p;
        if (lambda != 0.0) {
            const std::size_t m = coupled.size();
            for (std::size_t i = 0; i < m; ++i) {
                coupled.diag[i] += lambda * op.diag[i];
                coupled.lower[i] += lambda * op.lower[i];
                coupled.upper[i] += lambda * op.upper[i];
            }
            coupled.corner_first_last += lambda * op.corner_first_last;
            coupled.corner_last_first += lambda * op.corner_last_first;
        }
        psi = crank_nicolson_step(psi, coupled, dt, h.hbar());
        const double t_k = static_cast<double>(k + 1) * dt;
        const double w = (k + 1 == n_steps) ? 0.5 * dt : dt;
        acc.add(w, setup.g(t_k), hermitian_expectation(psi, op));
    }

    ShiftResult result;
    result.shift = acc.shift();
    result.exact = exact_value;
    result.post_overlap = std::abs(inner_product(psi0, psi));
    const double gap = setup.level_gap();
    result.adiabaticity_warning = gap >= 0.0 && coupling_scale * std::abs(p) > 0.05 * gap;
    return result;
}

}  // namespace

RegionPartition RegionPartition::uniform(const Grid1D& grid, int n_regions) {
    if (n_regions < 1 || n_regions > grid.n_points) {
        throw ConfigError("region count must lie between 1 and the cell count");
    }
    RegionPartition p;
    p.grid = grid;
    const int base = grid.n_points / n_regions;
    const int extra = grid.n_points % n_regions;
    int cursor = 0;
    for (int n = 0; n < n_regions; ++n) {
        const int cells = base + (n < extra ? 1 : 0);
        p.regions.push_back({cursor, cursor + cells - 1});
        p.volumes.push_back(cells * grid.dx);
        cursor += cells;
    }
    return p;
}

std::vector<double> projector_An(const RegionPartition& partition, int n) {
    if (n < 0 || n >= partition.size()) {
        throw ConfigError("region index out of range");
    }
    std::vector<double> values(static_cast<std::size_t>(partition.grid.n_points));
    for (int i = 0; i < partition.grid.n_points; ++i) {
        values[static_cast<std::size_t>(i)] = projector_value(partition, n, i);
    }
    return values;
}

ProtectiveSetup::ProtectiveSetup(WaveFunction state, Hamiltonian1D hamiltonian,
                                 double pointer_momentum, double duration,
                                 double ramp_fraction)
    : state_(std::move(state)),
      hamiltonian_(std::move(hamiltonian)),
      pointer_momentum_(pointer_momentum),
      duration_(duration),
      ramp_fraction_(ramp_fraction),
      energy_(0.0),
      level_gap_(-1.0) {
    if (!(duration > 0.0)) {
        throw ConfigError("measurement duration must be positive");
    }
    if (!(ramp_fraction > 0.0 && ramp_fraction < 0.5)) {
        throw ConfigError("ramp fraction must lie in (0, 0.5)");
    }
    if (state_.grid() != hamiltonian_.grid()) {
        throw StateError("state grid does not match the Hamiltonian grid");
    }

    energy_ = hamiltonian_.expectation(state_);
    const WaveFunction h_psi = hamiltonian_.apply(state_);
    CompensatedSum res2;
    for (int i = 0; i < state_.size(); ++i) {
        res2.add(std::norm(h_psi[i] - energy_ * state_[i]));
    }
    const double residual = std::sqrt(res2.value() * state_.grid().dx);
    const double energy_scale = std::max(1.0, std::abs(energy_));
    if (residual > 1e-6 * energy_scale) {
        throw StateError("state is not an eigenstate of its Hamiltonian; protection fails");
    }

    // Level gap, where the spectrum is cheap: hard wall via the tridiagonal
    // eigensolver, free periodic ring analytically. Otherwise unknown.
    const Grid1D& grid = hamiltonian_.grid();
    std::vector<double> levels;
    if (grid.boundary == Boundary::hard_wall) {
        levels = eigenvalues(hamiltonian_);
    } else if (grid.boundary == Boundary::periodic) {
        const Tridiagonal m = hamiltonian_.assemble(0.0);
        bool constant_potential = true;
        for (std::size_t i = 1; i < m.diag.size(); ++i) {
            if (m.diag[i] != m.diag[0]) {
                constant_potential = false;
                break;
            }
        }
        if (constant_potential) {
            const double kinetic = -m.upper[0].real();
            const double offset = m.diag[0].real() - 2.0 * kinetic;
            for (int j = 0; j < grid.n_points; ++j) {
                const double theta = 2.0 * std::numbers::pi * j / grid.n_points;
                levels.push_back(offset + 2.0 * kinetic * (1.0 - std::cos(theta)));
            }
        }
    }
    if (!levels.empty()) {
        double best = -1.0;
        double self = 1e300;
        for (double lam : levels) {
            const double d = std::abs(lam - energy_);
            if (d < self) {
                best = self;
                self = d;
            } else if (d < best || best < 0.0) {
                best = d;
            }
        }
        level_gap_ = best;
    }
}

double ProtectiveSetup::g(double t) const {
    const double r = ramp_fraction_;
    const double h = 1.0 / ((1.0 - r) * duration_);
    if (t < 0.0 || t > duration_) {
        return 0.0;
    }
    const double ramp = r * duration_;
    if (t < ramp) {
        return h * (t / ramp);
    }
    if (t > duration_ - ramp) {
        return h * ((duration_ - t) / ramp);
    }
    return h;
}

ShiftResult protective_shift_An(const ProtectiveSetup& setup, const RegionPartition& partition,
                                int n) {
    if (partition.grid != setup.state().grid()) {
        throw StateError("partition grid does not match the setup grid");
    }
    const auto a = projector_An(partition, n);
    Tridiagonal op;
    const std::size_t m = a.size();
    op.lower.assign(m, cdouble(0.0, 0.0));
    op.upper.assign(m, cdouble(0.0, 0.0));
    op.diag.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        op.diag[i] = a[i];
    }
    const double exact = diag_expectation(setup.state(), a);
    const double coupling_scale = 1.0 / partition.volumes[static_cast<std::size_t>(n)];
    return driven_shift(setup, op, exact, coupling_scale);
}

ShiftResult protective_shift_Bn(const ProtectiveSetup& setup, const RegionPartition& partition,
                                int n) {
    if (partition.grid != setup.state().grid()) {
        throw StateError("partition grid does not match the setup grid");
    }
    if (n < 0 || n >= partition.size()) {
        throw ConfigError("region index out of range");
    }
    const Hamiltonian1D& h = setup.hamiltonian();
    const Tridiagonal op = flux_operator(partition, n, h.hbar(), h.mass());
    const double exact = hermitian_expectation(setup.state(), op);
    const double coupling_scale = 1.0 / partition.volumes[static_cast<std::size_t>(n)];
    return driven_shift(setup, op, exact, coupling_scale);
}

MeasureField reconstruct_measure(const ProtectiveSetup& setup, const RegionPartition& partition,
                                 Execution ex) {
    const int n_regions = partition.size();
    std::vector<double> shift_a(static_cast<std::size_t>(n_regions));
    std::vector<double> shift_b(static_cast<std::size_t>(n_regions));
    for_each_index(n_regions, ex, [&](std::int64_t n) {
        shift_a[static_cast<std::size_t>(n)] =
            protective_shift_An(setup, partition, static_cast<int>(n)).shift;
        shift_b[static_cast<std::size_t>(n)] =
            protective_shift_Bn(setup, partition, static_cast<int>(n)).shift;
    });

    const Grid1D& grid = partition.grid;
    MeasureField field;
    field.grid = grid;
    field.rho.resize(static_cast<std::size_t>(grid.n_points));
    field.flux.resize(static_cast<std::size_t>(grid.n_points));
    CompensatedSum mass;
    for (int n = 0; n < n_regions; ++n) {
        const auto& r = partition.regions[static_cast<std::size_t>(n)];
        for (int i = r.first; i <= r.last; ++i) {
            field.rho[static_cast<std::size_t>(i)] = shift_a[static_cast<std::size_t>(n)];
            field.flux[static_cast<std::size_t>(i)] = shift_b[static_cast<std::size_t>(n)];
        }
        mass.add(shift_a[static_cast<std::size_t>(n)] *
                 partition.volumes[static_cast<std::size_t>(n)]);
    }
    if (!(mass.value() > 0.0)) {
        throw NumericError("reconstructed density has no mass");
    }
    const double scale = 1.0 / mass.value();
    for (double& v : field.rho) {
        v *= scale;
    }
    return field;
}

}  // namespace dqm
