// Compares the OpenMP execution policy against the serial reference on the
// two embarrassingly parallel kernels, and checks that both produce bitwise
// identical results (per-task derived RNG streams, fixed-order reductions).

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "dqm/collapse.hpp"
#include "dqm/grid.hpp"
#include "dqm/protective.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    return seconds_since(t0);
}

}  // namespace

int main() {
    using namespace dqm;
    int failures = 0;

    {
        const PhysicalConstants natural = PhysicalConstants::natural();
        const std::int64_t trials = 40000;
        CollapseEnsembleStats serial_stats, openmp_stats;
        const double t_serial = timed([&] {
            serial_stats = collapse_ensemble(0.01, 0.5, trials, natural, 1234,
                                             Execution::serial);
        });
        const double t_openmp = timed([&] {
            openmp_stats = collapse_ensemble(0.01, 0.5, trials, natural, 1234,
                                             Execution::openmp);
        });
        const bool same = serial_stats.mean_steps == openmp_stats.mean_steps &&
                          serial_stats.stderr_steps == openmp_stats.stderr_steps &&
                          serial_stats.branch1_fraction == openmp_stats.branch1_fraction &&
                          serial_stats.timed_out == openmp_stats.timed_out;
        if (!same) {
            std::fprintf(stderr, "collapse ensemble: serial and OpenMP results differ\n");
            ++failures;
        }
        std::printf("collapse ensemble  %8lld trials  serial %7.3fs  openmp %7.3fs  speedup %5.2fx  %s\n",
                    static_cast<long long>(trials), t_serial, t_openmp,
                    t_serial / t_openmp, same ? "identical" : "MISMATCH");
    }

    {
        Grid1D grid = Grid1D::hard_wall(0.0, 1.0, 400, 0.002);
        WaveFunction psi = well_eigenstate(grid, 1).state;
        Hamiltonian1D h(grid, 1.0, 1.0, {});
        ProtectiveSetup setup(psi, h, 1e-3, 2.0);
        RegionPartition partition = RegionPartition::uniform(grid, 16);
        MeasureField serial_field, openmp_field;
        const double t_serial = timed([&] {
            serial_field = reconstruct_measure(setup, partition, Execution::serial);
        });
        const double t_openmp = timed([&] {
            openmp_field = reconstruct_measure(setup, partition, Execution::openmp);
        });
        bool same = serial_field.rho == openmp_field.rho && serial_field.flux == openmp_field.flux;
        if (!same) {
            std::fprintf(stderr, "tomography: serial and OpenMP results differ\n");
            ++failures;
        }
        std::printf("measure tomography %7d regions  serial %7.3fs  openmp %7.3fs  speedup %5.2fx  %s\n",
                    partition.size(), t_serial, t_openmp, t_serial / t_openmp,
                    same ? "identical" : "MISMATCH");
    }

    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
