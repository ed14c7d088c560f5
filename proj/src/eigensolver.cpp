#include "dqm/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "dqm/errors.hpp"

extern "C" {
void dstev_(const char* jobz, const int* n, double* d, double* e, double* z, const int* ldz,
            double* work, int* info);
}

namespace dqm {
namespace {

// Real bands of the hard-wall Hamiltonian matrix: diagonal and the (constant
// up to potential) off-diagonal.
void real_bands(const Hamiltonian1D& h, double t, std::vector<double>& d,
                std::vector<double>& e) {
    if (h.grid().boundary != Boundary::hard_wall) {
        throw ConfigError("eigensolver requires a hard-wall grid");
    }
    const Tridiagonal m = h.assemble(t);
    const std::size_t n = m.size();
    d.resize(n);
    e.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = m.diag[i].real();
        if (i + 1 < n) {
            e[i] = m.upper[i].real();
        }
    }
}

}  // namespace

SpectrumSlice lowest_eigenstates(const Hamiltonian1D& h, int count, double t) {
    const int n = h.grid().n_points;
    if (count < 1 || count > n) {
        throw ConfigError("requested eigenstate count is out of range");
    }
    std::vector<double> d, e;
    real_bands(h, t, d, e);

    std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    std::vector<double> work(static_cast<std::size_t>(std::max(1, 2 * n - 2)));
    int info = 0;
    const char jobz = 'V';
    dstev_(&jobz, &n, d.data(), e.data(), z.data(), &n, work.data(), &info);
    if (info != 0) {
        throw NumericError("eigensolver failed to converge");
    }

    SpectrumSlice slice;
    slice.energies.assign(d.begin(), d.begin() + count);
    const double inv_sqrt_dx = 1.0 / std::sqrt(h.grid().dx);
    for (int k = 0; k < count; ++k) {
        std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
        // LAPACK returns unit 2-norm columns; rescale to unit integral of |psi|^2.
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] =
                z[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(i)] *
                inv_sqrt_dx;
        }
        slice.states.push_back(WaveFunction(h.grid(), std::move(a)).normalized());
    }
    return slice;
}

std::vector<double> eigenvalues(const Hamiltonian1D& h, double t) {
    const int n = h.grid().n_points;
    std::vector<double> d, e;
    real_bands(h, t, d, e);
    int info = 0;
    const char jobz = 'N';
    dstev_(&jobz, &n, d.data(), e.data(), nullptr, &n, nullptr, &info);
    if (info != 0) {
        throw NumericError("eigensolver failed to converge");
    }
    return d;
}

}  // namespace dqm
