// End-to-end acceptance checks, one per shipped guarantee. Each check prints
// a single [PASS] line with the measured values; the first violation prints
// [FAIL] with the offending numbers and exits nonzero. Checks stay on in
// Release builds.

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "dqm/collapse.hpp"
#include "dqm/constants.hpp"
#include "dqm/experiment.hpp"
#include "dqm/grid.hpp"
#include "dqm/measure.hpp"
#include "dqm/numeric.hpp"
#include "dqm/propagator.hpp"
#include "dqm/protective.hpp"
#include "dqm/sampler.hpp"

using namespace dqm;

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

#define REQUIRE(cond, msg)                                                        \
    do {                                                                          \
        if (!(cond)) {                                                            \
            std::fprintf(stderr, "[FAIL] %s:%d %s\n", __FILE__, __LINE__,         \
                         std::string(msg).c_str());                               \
            std::exit(1);                                                         \
        }                                                                         \
    } while (0)

void pass(int criterion, const std::string& detail) {
    std::printf("[PASS] criterion %d: %s\n", criterion, detail.c_str());
    std::fflush(stdout);
}

// 1. A moving Gaussian keeps norm and energy over 1e4 Crank-Nicolson steps.
void criterion_unitarity() {
    const Grid1D grid = Grid1D::periodic(-40.0, 40.0, 2048, 1e-3);
    const Hamiltonian1D h(grid, 1.0, 1.0);
    const WaveFunction psi0 = gaussian_packet(grid, -5.0, 1.0, 1.0);
    const double e0 = h.expectation(psi0);

    const WaveFunction psi = evolve(psi0, h, 10.0);  // 1e4 steps of dt = 1e-3
    const double norm_drift = std::abs(std::sqrt(psi.norm2()) - 1.0);
    const double energy_drift = std::abs(h.expectation(psi) - e0) / std::abs(e0);

    REQUIRE(norm_drift < 1e-10, fmt("norm drift %.3e exceeds 1e-10", norm_drift));
    REQUIRE(energy_drift < 1e-8, fmt("relative energy drift %.3e exceeds 1e-8", energy_drift));
    pass(1, fmt("unitarity over 1e4 steps (norm drift %.2e, energy drift %.2e)", norm_drift,
                energy_drift));
}

// 2. The residual of d(rho)/dt + d(j)/dx shrinks at second order when dx and
//    dt are refined together.
void criterion_continuity() {
    const int sizes[3] = {256, 512, 1024};
    const double dts[3] = {4e-3, 2e-3, 1e-3};
    double residual[3];
    for (int level = 0; level < 3; ++level) {
        const Grid1D grid = Grid1D::periodic(-20.0, 20.0, sizes[level], dts[level]);
        const Hamiltonian1D h(grid, 1.0, 1.0);
        const WaveFunction before = gaussian_packet(grid, -3.0, 1.5, 2.0);
        const WaveFunction after = evolve(before, h, grid.dt);
        residual[level] = continuity_residual(before, after, grid.dt);
    }
    const double order01 = std::log2(residual[0] / residual[1]);
    const double order12 = std::log2(residual[1] / residual[2]);
    REQUIRE(order01 >= 1.8 && order01 <= 2.2,
            fmt("refinement order %.3f outside [1.8, 2.2]", order01));
    REQUIRE(order12 >= 1.8 && order12 <= 2.2,
            fmt("refinement order %.3f outside [1.8, 2.2]", order12));
    pass(2, fmt("continuity residual converges at order %.2f, %.2f", order01, order12));
}

// 3. Position<->momentum transform: exact round trip, Gaussian width
//    reciprocity sigma_p = hbar/(2 sigma), and Parseval.
void criterion_momentum_transform() {
    const Grid1D grid = Grid1D::periodic(-40.0, 40.0, 1024, 1e-3);
    const WaveFunction psi = gaussian_packet(grid, 0.0, 1.0, 1.0);

    double round_trip = 0.0;
    for (double t : {0.0, 0.37}) {
        const MomentumState ms = to_momentum(psi, t);
        const WaveFunction back = to_position(ms, t);
        for (int i = 0; i < grid.n_points; ++i) {
            round_trip = std::max(round_trip, std::abs(psi[i] - back[i]));
        }
    }
    REQUIRE(round_trip < 1e-12, fmt("round-trip error %.3e exceeds 1e-12", round_trip));

    const MomentumState ms = to_momentum(psi);
    CompensatedSum mass, mean, second;
    for (std::size_t k = 0; k < ms.p.size(); ++k) {
        mass.add(ms.f[k]);
        mean.add(ms.p[k] * ms.f[k]);
        second.add(ms.p[k] * ms.p[k] * ms.f[k]);
    }
    const double dp = ms.dp();
    const double p_mean = mean.value() * dp;
    const double sigma_p = std::sqrt(second.value() * dp - p_mean * p_mean);
    const double reciprocity = std::abs(sigma_p - 0.5) / 0.5;  // hbar/(2 sigma) = 0.5
    REQUIRE(reciprocity < 0.02,
            fmt("sigma_p %.6f misses hbar/(2 sigma) = 0.5 by %.2f%%", sigma_p,
                100.0 * reciprocity));

    const double parseval = std::abs(mass.value() * dp - psi.norm2());
    REQUIRE(parseval < 1e-12, fmt("Parseval defect %.3e exceeds 1e-12", parseval));
    pass(3, fmt("momentum transform (round trip %.1e, sigma_p off by %.3f%%, Parseval %.1e)",
                round_trip, 100.0 * reciprocity, parseval));
}

// 4. Numeric evolution matches the closed-form free Gaussian at the moment
//    the width has doubled.
void criterion_free_oracle() {
    const Grid1D grid = Grid1D::periodic(-40.0, 40.0, 2048, 1e-3);
    const Hamiltonian1D h(grid, 1.0, 1.0);
    const WaveFunction psi0 = gaussian_packet(grid, -5.0, 1.0, 1.0);

    // Width doubles at t = 2 sqrt(3) sigma^2; land exactly on a step count.
    const double t_star = 2.0 * std::sqrt(3.0);
    const double t_run = static_cast<double>(std::llround(t_star / grid.dt)) * grid.dt;
    const WaveFunction psi = evolve(psi0, h, t_run);
    const WaveFunction exact = analytic_free_gaussian(grid, -5.0, 1.0, 1.0, t_run);
    const double overlap = std::abs(inner_product(psi, exact));
    REQUIRE(overlap > 1.0 - 1e-5, fmt("overlap %.10f not above 1 - 1e-5", overlap));
    pass(4, fmt("free-packet oracle overlap %.8f at width-doubling time %.4f", overlap, t_run));
}

// 5. Protective measurement: A_n shifts read the region-averaged density to
//    1%, the adiabatic error falls monotonically with T, the state survives,
//    and ring B_n shifts read the uniform current to 1%.
void criterion_protective() {
    const Grid1D grid = Grid1D::hard_wall(0.0, 1.0, 200, 0.002);
    const Hamiltonian1D h(grid, 1.0, 1.0, {});
    const WaveFunction psi = well_eigenstate(grid, 1).state;
    const RegionPartition partition = RegionPartition::uniform(grid, 10);

    const double durations[4] = {1.0, 2.0, 4.0, 8.0};
    double worst[4];
    double rel_at_t4 = 0.0;
    for (int step = 0; step < 4; ++step) {
        const ProtectiveSetup setup(psi, h, 1e-3, durations[step]);
        double w = 0.0;
        for (int n = 0; n < partition.size(); ++n) {
            const ShiftResult a = protective_shift_An(setup, partition, n);
            w = std::max(w, std::abs(a.shift - a.exact));
            REQUIRE(a.post_overlap > 0.99,
                    fmt("post overlap %.4f at T=%.0f", a.post_overlap, durations[step]));
            if (durations[step] == 4.0) {
                const double rel = std::abs(a.shift - a.exact) / a.exact;
                rel_at_t4 = std::max(rel_at_t4, rel);
                REQUIRE(rel < 0.01,
                        fmt("region %d density shift off by %.3f%%", n, 100.0 * rel));
            }
        }
        worst[step] = w;
    }
    for (int step = 1; step < 4; ++step) {
        REQUIRE(worst[step] < worst[step - 1],
                fmt("adiabatic error not monotone: %.3e then %.3e", worst[step - 1],
                    worst[step]));
    }

    const Grid1D ring = Grid1D::periodic(0.0, 1.0, 256, 0.002);
    const Hamiltonian1D ring_h(ring, 1.0, 1.0, {});
    const int k = 2;
    const WaveFunction wave = plane_wave(ring, k);
    const ProtectiveSetup ring_setup(wave, ring_h, 0.01, 2.0);
    const RegionPartition ring_partition = RegionPartition::uniform(ring, 10);
    const double current = 2.0 * std::numbers::pi * k / (ring.length() * ring.length());
    double flux_rel = 0.0;
    for (int n = 0; n < ring_partition.size(); ++n) {
        const ShiftResult b = protective_shift_Bn(ring_setup, ring_partition, n);
        const double rel = std::abs(b.shift - current) / current;
        flux_rel = std::max(flux_rel, rel);
        REQUIRE(rel < 0.01, fmt("ring region %d flux shift off by %.3f%%", n, 100.0 * rel));
        REQUIRE(b.post_overlap > 0.99, fmt("ring post overlap %.4f", b.post_overlap));
    }
    pass(5, fmt("protective shifts (density off %.3f%% at T=4, error ladder %.1e > %.1e > "
                "%.1e > %.1e, flux off %.3f%%)",
                100.0 * rel_at_t4, worst[0], worst[1], worst[2], worst[3], 100.0 * flux_rel));
}

// First-passage law of the +-s measure walk on its own step lattice. Starting
// at rho0 there are d = ceil(rho0/s) steps down to absorption and
// u = ceil((1-rho0)/s) steps up; the mean absorption time is d*u and the
// up-branch probability d/(d+u). When 1/s and rho0/s are integers these are
// exactly rho0(1-rho0)/s^2 and rho0; off the lattice the product form is the
// exact law and the quotient form only its continuum limit.
std::int64_t barrier_steps(double distance, double s) {
    const double q = distance / s;
    return static_cast<std::int64_t>(std::ceil(q - 1e-9));
}

// 6. Monte Carlo collapse statistics match the absorbing-walk law, the
//    ruin-time exponent, and the Born rule.
void criterion_collapse() {
    const PhysicalConstants natural = PhysicalConstants::natural();
    const std::uint64_t base_seed = 20260814;
    const std::int64_t trials = 10000;

    const double rhos[3] = {0.25, 0.5, 0.75};
    const double gaps[2] = {0.1, 0.01};
    double worst_sigmas = 0.0;
    std::uint64_t stream = 0;
    for (double rho0 : rhos) {
        for (double s : gaps) {
            const double down = static_cast<double>(barrier_steps(rho0, s));
            const double up = static_cast<double>(barrier_steps(1.0 - rho0, s));
            const double expected_steps = down * up;
            const double expected_up = down / (down + up);

            const CollapseEnsembleStats stats = collapse_ensemble(
                s, rho0, trials, natural, SeededRng::derive(base_seed, stream++));
            REQUIRE(stats.timed_out == 0, "collapse trials timed out");

            const double dev = std::abs(stats.mean_steps - expected_steps);
            REQUIRE(dev <= 3.0 * stats.stderr_steps,
                    fmt("mean steps %.2f vs %.2f is %.1f standard errors at rho0=%.2f s=%.2f",
                        stats.mean_steps, expected_steps, dev / stats.stderr_steps, rho0, s));
            worst_sigmas = std::max(worst_sigmas, dev / stats.stderr_steps);

            const double born_sigma =
                std::sqrt(expected_up * (1.0 - expected_up) / static_cast<double>(trials));
            const double born_dev = std::abs(stats.branch1_fraction - expected_up);
            REQUIRE(born_dev <= 3.0 * born_sigma,
                    fmt("branch fraction %.4f vs %.4f at rho0=%.2f s=%.2f",
                        stats.branch1_fraction, expected_up, rho0, s));
        }
    }

    // Four octaves of the gap at rho0 = 1/2; tau_c is expected to fall as
    // the inverse square of the gap.
    std::vector<double> delta_es, taus;
    for (int octave = 0; octave <= 4; ++octave) {
        const double s = std::ldexp(1.0, -2 - octave);  // 1/4 .. 1/64
        const CollapseEnsembleStats stats = collapse_ensemble(
            s, 0.5, trials, natural, SeededRng::derive(base_seed, stream++));
        delta_es.push_back(s * natural.planck_energy);
        taus.push_back(stats.mean_steps * natural.planck_time);
    }
    const double exponent = fit_log_slope(delta_es, taus);
    REQUIRE(std::abs(exponent + 2.0) <= 0.1,
            fmt("fitted gap exponent %.4f outside -2 +- 0.1", exponent));
    pass(6, fmt("collapse statistics (worst mean deviation %.2f sigma, gap exponent %.3f)",
                worst_sigmas, exponent));
}

// 7. The combined length uncertainty has a cube-root minimum.
void criterion_planck() {
    const PhysicalConstants natural = PhysicalConstants::natural();
    std::vector<double> lengths, minima;
    for (int i = 0; i <= 24; ++i) {
        const double length = std::pow(10.0, 0.25 * i);  // 1 .. 1e6
        const LengthMinimum lm = minimum_measurable_length(length, natural);
        const double cube_root = std::cbrt(length * natural.planck_length *
                                           natural.planck_length);
        REQUIRE(lm.dl_min >= 0.5 * cube_root && lm.dl_min <= 2.0 * cube_root,
                fmt("dl_min %.4f outside [1/2, 2] of %.4f at L=%.3e", lm.dl_min, cube_root,
                    length));
        lengths.push_back(length);
        minima.push_back(lm.dl_min);
    }
    const double slope = fit_log_slope(lengths, minima);
    REQUIRE(std::abs(slope - 1.0 / 3.0) <= 1e-3,
            fmt("fitted slope %.6f outside 1/3 +- 1e-3", slope));
    pass(7, fmt("minimum length scales as L^(1/3) (slope %.6f over 6 decades)", slope));
}

// 8. Two-source evolution is not the mixture of the single-source ones, and
//    point-set draws from the superposition visit both lobes.
void criterion_double_slit() {
    const ExperimentConfig config = load_config(
        "{\"experiment\":\"double_slit\",\"seed\":404,"
        "\"grid\":{\"x_min\":-120,\"x_max\":120,\"dt\":0.005,\"n_points\":2048,"
        "\"boundary\":\"periodic\"},"
        "\"state\":{\"sigma\":0.5,\"slit_separation\":8},"
        "\"schedule\":{\"t_final\":20}}");
    const ResultRecord record = run_experiment(config);
    const double l1 = record.summary.at("l1_ab_mix");
    const double v_ab = record.summary.at("v_ab");
    const double v_mix = record.summary.at("v_mix");
    const double left = record.summary.at("lobe_mass_left");
    const double right = record.summary.at("lobe_mass_right");
    REQUIRE(l1 > 0.1, fmt("L1(rho_ab, rho_mix) = %.4f not above 0.1", l1));
    REQUIRE(v_ab > 0.5, fmt("interference visibility %.4f not above 0.5", v_ab));
    REQUIRE(v_mix < 0.1, fmt("mixture visibility %.4f not below 0.1", v_mix));
    REQUIRE(left > 0.3 && right > 0.3,
            fmt("lobe masses %.3f / %.3f not both above 0.3", left, right));
    pass(8, fmt("double slit (L1 %.3f, visibility %.3f vs %.3f, lobes %.3f/%.3f)", l1, v_ab,
                v_mix, left, right));
}

// 9. Sampling fidelity: a large draw reproduces the density, and the mean jump
//    of a uniform state is the universal 1/3 regardless of sampling stride.
void criterion_sampler() {
    const Grid1D well = Grid1D::hard_wall(0.0, 1.0, 400, 0.002);
    const std::vector<double> rho = position_density(well_eigenstate(well, 1).state);
    const CellSampler sampler(well, rho);
    SeededRng rng(909);
    PointSetTrajectory draws;
    draws.x_min = well.x_min;
    draws.x_max = well.x_max;
    const int n_draws = 1000000;
    draws.t.reserve(n_draws);
    draws.x.reserve(n_draws);
    for (int i = 0; i < n_draws; ++i) {
        draws.t.push_back(static_cast<double>(i));
        draws.x.push_back(sampler.sample(rng));
    }
    const double l1 = l1_distance(empirical_density(draws, 50), well, rho);
    REQUIRE(l1 < 0.01, fmt("L1(empirical, rho) = %.5f not below 0.01 at 1e6 draws", l1));

    const Grid1D ring = Grid1D::periodic(0.0, 1.0, 256, 1e-3);
    const Hamiltonian1D h(ring, 1.0, 1.0);
    const WaveFunction uniform = plane_wave(ring, 0);
    double jumps[2];
    const int strides[2] = {1, 5};
    for (int c = 0; c < 2; ++c) {
        SeededRng traj_rng(777 + static_cast<std::uint64_t>(c));
        const double t_final = 20000.0 * strides[c] * ring.dt;
        const PointSetTrajectory traj =
            simulate_trajectory(uniform, h, t_final, strides[c], traj_rng);
        REQUIRE(traj.x.size() == 20001, "unexpected sample count");
        jumps[c] = discontinuity_statistic(traj);
        // Var(mean jump) for 2e4 uniform jumps is 1/(15 * 2e4).
        const double band = 3.0 / std::sqrt(15.0 * 20000.0);
        REQUIRE(std::abs(jumps[c] - 1.0 / 3.0) < band,
                fmt("mean jump %.5f outside 1/3 +- %.5f at stride %d", jumps[c], band,
                    strides[c]));
    }
    pass(9, fmt("sampler fidelity (L1 %.4f at 1e6 draws, mean jump %.4f / %.4f for strides "
                "1 and 5)",
                l1, jumps[0], jumps[1]));
}

// 10. Re-running any experiment with the same config and seed reproduces the
//     artifact bytes exactly.
void criterion_reproducibility() {
    const char* configs[3] = {
        "{\"experiment\":\"collapse\",\"seed\":31,"
        "\"collapse\":{\"delta_e_over_ep\":0.1,\"trials\":10000}}",
        "{\"experiment\":\"sample\",\"seed\":32,"
        "\"grid\":{\"x_min\":0,\"x_max\":1,\"dt\":0.001,\"n_points\":256,"
        "\"boundary\":\"periodic\"},"
        "\"state\":{\"kind\":\"uniform\"},"
        "\"schedule\":{\"t_final\":0.2}}",
        "{\"experiment\":\"double_slit\",\"seed\":33,"
        "\"grid\":{\"x_min\":-60,\"x_max\":60,\"dt\":0.01,\"n_points\":1024,"
        "\"boundary\":\"periodic\"},"
        "\"state\":{\"sigma\":0.5,\"slit_separation\":8},"
        "\"schedule\":{\"t_final\":1}}"};
    for (const char* text : configs) {
        const ExperimentConfig config = load_config(text);
        const ResultRecord first = run_experiment(config);
        const ResultRecord second = run_experiment(config);
        REQUIRE(first.csv_payloads.size() == second.csv_payloads.size(),
                "artifact count changed between runs");
        for (std::size_t i = 0; i < first.csv_payloads.size(); ++i) {
            REQUIRE(first.csv_payloads[i] == second.csv_payloads[i],
                    fmt("%s: %s differs between identical runs", config.experiment.c_str(),
                        first.csv_names[i].c_str()));
        }
        REQUIRE(first.summary_json == second.summary_json,
                fmt("%s: summary.json differs between identical runs",
                    config.experiment.c_str()));
    }
    pass(10, "byte-identical artifacts across re-runs of collapse, sample, double_slit");
}

}  // namespace

int main() {
    criterion_unitarity();
    criterion_continuity();
    criterion_momentum_transform();
    criterion_free_oracle();
    criterion_protective();
    criterion_collapse();
    criterion_planck();
    criterion_double_slit();
    criterion_sampler();
    criterion_reproducibility();
    std::printf("all 10 acceptance criteria passed\n");
    return 0;
}
