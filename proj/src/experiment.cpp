#include "dqm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <span>

#include "config_internal.hpp"
#include "dqm/collapse.hpp"
#include "dqm/constants.hpp"
#include "dqm/eigensolver.hpp"
#include "dqm/errors.hpp"
#include "dqm/io.hpp"
#include "dqm/measure.hpp"
#include "dqm/numeric.hpp"
#include "dqm/propagator.hpp"
#include "dqm/protective.hpp"
#include "dqm/sampler.hpp"
#include "dqm/version.hpp"

namespace dqm {
namespace {

using nlohmann::json;

// Fringe analysis constants, calibrated once against the default double-slit
// geometry (sigma 0.5, separation 8, t_final 20) and frozen.
constexpr double kFringeWindowHalfWidth = 10.0;
constexpr int kSlitSamplerDraws = 100000;

std::string hex16(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void add_csv(ResultRecord& record, const std::string& name, const Table& table) {
    record.csv_names.push_back(name);
    record.csv_payloads.push_back(to_csv(table, record.config_hash));
}

double density_l1(const Grid1D& grid, std::span<const double> a, std::span<const double> b) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum.add(std::abs(a[i] - b[i]) * grid.dx);
    }
    return sum.value();
}

double visibility(const Grid1D& grid, std::span<const double> rho, double half_width) {
    double lo = 1e300;
    double hi = -1e300;
    for (int i = 0; i < grid.n_points; ++i) {
        if (std::abs(grid.x(i)) <= half_width) {
            lo = std::min(lo, rho[static_cast<std::size_t>(i)]);
            hi = std::max(hi, rho[static_cast<std::size_t>(i)]);
        }
    }
    if (!(hi > -1e300)) {
        throw ConfigError("fringe window contains no grid points");
    }
    return (hi - lo) / (hi + lo);
}

WaveFunction two_slit_state(const Grid1D& grid, const StateConfig& s) {
    const double half = 0.5 * s.slit_separation;
    const WaveFunction a = gaussian_packet(grid, -half, s.sigma, s.p0);
    if (s.amplitude_b == 0.0) {
        return a;
    }
    const WaveFunction b = gaussian_packet(grid, half, s.sigma, s.p0);
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        amps[static_cast<std::size_t>(i)] = a[i] + s.amplitude_b * b[i];
    }
    return WaveFunction(grid, std::move(amps)).normalized();
}

void check_no_wraparound(const Grid1D& grid, std::span<const double> rho) {
    const double edge = std::max(rho.front(), rho.back());
    if (edge > 1e-6) {
        throw NumericError("wave packet reached the domain edge (edge density " +
                           format_number(edge) + ")");
    }
    (void)grid;
}

ResultRecord run_double_slit(const ExperimentConfig& config, Execution ex) {
    const Grid1D grid = config.grid->make();
    const StateConfig& s = *config.state;
    const double t_final = config.schedule->t_final;
    const Hamiltonian1D h(grid, 1.0, 1.0);

    const WaveFunction slit_a0 = gaussian_packet(grid, -0.5 * s.slit_separation, s.sigma, s.p0);
    const WaveFunction slit_b0 = gaussian_packet(grid, 0.5 * s.slit_separation, s.sigma, s.p0);
    const WaveFunction both0 = two_slit_state(grid, s);

    // Three independent evolutions: each slit alone and the superposition.
    WaveFunction states[3] = {both0, slit_a0, slit_b0};
    for_each_index(3, ex, [&](std::int64_t i) {
        states[i] = evolve(states[i], h, t_final);
    });
    const auto rho_ab = position_density(states[0]);
    const auto rho_a = position_density(states[1]);
    const auto rho_b = position_density(states[2]);
    check_no_wraparound(grid, rho_ab);
    check_no_wraparound(grid, rho_a);
    check_no_wraparound(grid, rho_b);

    std::vector<double> rho_mix(rho_a.size());
    for (std::size_t i = 0; i < rho_a.size(); ++i) {
        rho_mix[i] = 0.5 * (rho_a[i] + rho_b[i]);
    }

    ResultRecord record;
    record.config_hash = config.config_hash;
    record.summary["l1_ab_mix"] = density_l1(grid, rho_ab, rho_mix);
    record.summary["v_ab"] = visibility(grid, rho_ab, kFringeWindowHalfWidth);
    record.summary["v_mix"] = visibility(grid, rho_mix, kFringeWindowHalfWidth);
    record.summary["edge_density_max"] = std::max(rho_ab.front(), rho_ab.back());

    // Point-set draws from the superposition at t = 0 show appearance in both
    // slit lobes.
    if (s.amplitude_b != 0.0) {
        SeededRng rng(SeededRng::derive(config.seed, 1));
        const CellSampler sampler(grid, position_density(both0));
        PointSetTrajectory draws;
        draws.x_min = grid.x_min;
        draws.x_max = grid.x_max;
        draws.source = "two-slit superposition, t = 0";
        std::int64_t left = 0;
        for (int k = 0; k < kSlitSamplerDraws; ++k) {
            const double x = sampler.sample(rng);
            draws.t.push_back(static_cast<double>(k));
            draws.x.push_back(x);
            if (x < 0.0) {
                ++left;
            }
        }
        record.summary["lobe_mass_left"] =
            static_cast<double>(left) / kSlitSamplerDraws;
        record.summary["lobe_mass_right"] =
            static_cast<double>(kSlitSamplerDraws - left) / kSlitSamplerDraws;
        add_csv(record, "histogram.csv",
                histogram_table(empirical_density(draws, config.schedule->n_bins)));
    }

    Table density;
    density.columns = {"x", "rho_ab", "rho_a", "rho_b", "rho_mix"};
    for (int i = 0; i < grid.n_points; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        density.add_row({grid.x(i), rho_ab[k], rho_a[k], rho_b[k], rho_mix[k]});
    }
    add_csv(record, "density.csv", density);
    add_csv(record, "psi_ab.csv", wavefunction_table(states[0]));
    return record;
}

ResultRecord run_free_packet(const ExperimentConfig& config, Execution) {
    const Grid1D grid = config.grid->make();
    const StateConfig& s = *config.state;
    const double t_final = config.schedule->t_final;
    const Hamiltonian1D h(grid, 1.0, 1.0);

    const WaveFunction psi0 = gaussian_packet(grid, s.x0, s.sigma, s.p0);
    const double e0 = h.expectation(psi0);
    const WaveFunction psi = evolve(psi0, h, t_final);
    const WaveFunction exact = analytic_free_gaussian(grid, s.x0, s.sigma, s.p0, t_final);

    const auto rho = position_density(psi);
    check_no_wraparound(grid, rho);

    CompensatedSum mean_acc, second_acc;
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        mean_acc.add(x * rho[static_cast<std::size_t>(i)]);
        second_acc.add(x * x * rho[static_cast<std::size_t>(i)]);
    }
    const double mean = mean_acc.value() * grid.dx;
    const double second = second_acc.value() * grid.dx;
    const std::complex<double> beta(1.0, t_final / (2.0 * s.sigma * s.sigma));

    ResultRecord record;
    record.config_hash = config.config_hash;
    record.summary["overlap_analytic"] = std::abs(inner_product(psi, exact));
    record.summary["norm_drift"] = std::abs(std::sqrt(psi.norm2()) - 1.0);
    record.summary["energy_drift_rel"] =
        std::abs(h.expectation(psi) - e0) / std::max(1e-300, std::abs(e0));
    record.summary["width_numeric"] = std::sqrt(std::max(0.0, second - mean * mean));
    record.summary["width_analytic"] = s.sigma * std::abs(beta);
    add_csv(record, "psi.csv", wavefunction_table(psi));
    return record;
}

ResultRecord run_sample(const ExperimentConfig& config, Execution) {
    const Grid1D grid = config.grid->make();
    const StateConfig& s = *config.state;
    const ScheduleConfig& sched = *config.schedule;
    const Hamiltonian1D h(grid, 1.0, 1.0);

    WaveFunction psi0 = [&] {
        if (s.kind == "uniform") {
            return plane_wave(grid, 0);
        }
        if (s.kind == "well_ground") {
            return well_eigenstate(grid, s.quantum_number).state;
        }
        return gaussian_packet(grid, s.x0, s.sigma, s.p0);
    }();

    SeededRng rng(config.seed);
    const PointSetTrajectory traj =
        simulate_trajectory(psi0, h, sched.t_final, sched.sample_every, rng);
    const Histogram hist = empirical_density(traj, sched.n_bins);

    ResultRecord record;
    record.config_hash = config.config_hash;
    record.summary["n_samples"] = static_cast<double>(traj.x.size());
    if (traj.x.size() >= 2) {
        record.summary["mean_jump"] = discontinuity_statistic(traj);
    }
    record.summary["l1_to_initial_density"] =
        l1_distance(hist, grid, position_density(psi0));
    add_csv(record, "trajectory.csv", trajectory_table(traj));
    add_csv(record, "histogram.csv", histogram_table(hist));
    return record;
}

ResultRecord run_protect(const ExperimentConfig& config, Execution ex) {
    const Grid1D grid = config.grid->make();
    const ProtectConfig& p = *config.protect;

    PotentialField potential;
    if (p.state == "double_well") {
        const double center = 0.5 * (grid.x_min + grid.x_max);
        const double height = p.barrier_height;
        const double width = p.barrier_width;
        const double tilt = p.tilt;
        potential = [center, height, width, tilt](double x, double) {
            const double d = x - center;
            return height * std::exp(-d * d / (2.0 * width * width)) + tilt * (x - center);
        };
    }
    const Hamiltonian1D h(grid, 1.0, 1.0, potential);

    WaveFunction state = [&] {
        if (p.state == "ring") {
            return plane_wave(grid, p.k_index);
        }
        if (p.state == "double_well") {
            return lowest_eigenstates(h, 1).states.front();
        }
        return well_eigenstate(grid, p.quantum_number).state;
    }();

    const ProtectiveSetup setup(std::move(state), h, p.pointer_momentum, p.duration,
                                p.ramp_fraction);
    const RegionPartition partition = RegionPartition::uniform(grid, p.regions);

    std::vector<ShiftResult> shifts_a(static_cast<std::size_t>(p.regions));
    std::vector<ShiftResult> shifts_b(static_cast<std::size_t>(p.regions));
    for_each_index(p.regions, ex, [&](std::int64_t n) {
        shifts_a[static_cast<std::size_t>(n)] =
            protective_shift_An(setup, partition, static_cast<int>(n));
        shifts_b[static_cast<std::size_t>(n)] =
            protective_shift_Bn(setup, partition, static_cast<int>(n));
    });

    Table regions;
    regions.columns = {"region_index", "x_lo", "x_hi", "shift_A", "exact_A",
                       "shift_B",      "exact_B"};
    double post_overlap_min = 1.0;
    double max_err_a = 0.0;
    double max_err_b = 0.0;
    int warnings = 0;
    const double half_cell = grid.boundary == Boundary::hard_wall ? 0.5 * grid.dx : 0.0;
    for (int n = 0; n < p.regions; ++n) {
        const auto& region = partition.regions[static_cast<std::size_t>(n)];
        const auto& a = shifts_a[static_cast<std::size_t>(n)];
        const auto& b = shifts_b[static_cast<std::size_t>(n)];
        regions.add_row({static_cast<double>(n), grid.x(region.first) - half_cell,
                         grid.x(region.last) + grid.dx - half_cell, a.shift, a.exact, b.shift,
                         b.exact});
        post_overlap_min = std::min({post_overlap_min, a.post_overlap, b.post_overlap});
        max_err_a = std::max(max_err_a, std::abs(a.shift - a.exact));
        max_err_b = std::max(max_err_b, std::abs(b.shift - b.exact));
        warnings += (a.adiabaticity_warning ? 1 : 0) + (b.adiabaticity_warning ? 1 : 0);
    }

    ResultRecord record;
    record.config_hash = config.config_hash;
    record.summary["post_overlap_min"] = post_overlap_min;
    record.summary["max_abs_err_A"] = max_err_a;
    record.summary["max_abs_err_B"] = max_err_b;
    record.summary["adiabaticity_warnings"] = warnings;
    record.summary["level_gap"] = setup.level_gap();

    if (p.state == "double_well") {
        const double center = 0.5 * (grid.x_min + grid.x_max);
        CompensatedSum left_mass, right_mass;
        for (int n = 0; n < p.regions; ++n) {
            const auto& region = partition.regions[static_cast<std::size_t>(n)];
            const double mid = 0.5 * (grid.x(region.first) + grid.x(region.last));
            const double mass = shifts_a[static_cast<std::size_t>(n)].shift *
                                partition.volumes[static_cast<std::size_t>(n)];
            (mid < center ? left_mass : right_mass).add(mass);
        }
        record.summary["lobe_mass_left"] = left_mass.value();
        record.summary["lobe_mass_right"] = right_mass.value();
        if (p.tilt == 0.0 &&
            (left_mass.value() <= 0.3 || right_mass.value() <= 0.3)) {
            throw NumericError("two-lobe state failed to register in both lobes");
        }
    }

    add_csv(record, "regions.csv", regions);
    return record;
}

ResultRecord run_collapse(const ExperimentConfig& config, Execution ex) {
    const CollapseConfig& c = *config.collapse;
    const PhysicalConstants constants = PhysicalConstants::natural();
    const double delta_e = c.delta_e_over_ep * constants.planck_energy;
    const TwoLevelCollapseState initial(c.rho0, delta_e, constants);

    const std::int64_t trials = c.trials;
    std::vector<double> steps(static_cast<std::size_t>(trials));
    std::vector<double> outcomes(static_cast<std::size_t>(trials));
    std::vector<unsigned char> late(static_cast<std::size_t>(trials));
    for_each_index(trials, ex, [&](std::int64_t i) {
        SeededRng rng(SeededRng::derive(config.seed, static_cast<std::uint64_t>(i)));
        const CollapseRun run = run_until_collapse(initial, rng, c.max_steps);
        steps[static_cast<std::size_t>(i)] = static_cast<double>(run.steps);
        outcomes[static_cast<std::size_t>(i)] = static_cast<double>(run.outcome);
        late[static_cast<std::size_t>(i)] = run.timed_out ? 1 : 0;
    });

    CompensatedSum mean_acc;
    std::int64_t to_branch1 = 0;
    std::int64_t timed_out = 0;
    for (std::int64_t i = 0; i < trials; ++i) {
        mean_acc.add(steps[static_cast<std::size_t>(i)]);
        to_branch1 += outcomes[static_cast<std::size_t>(i)] == 1.0 ? 1 : 0;
        timed_out += late[static_cast<std::size_t>(i)];
    }
    const double mean_steps = mean_acc.value() / static_cast<double>(trials);
    CompensatedSum var_acc;
    for (double v : steps) {
        var_acc.add((v - mean_steps) * (v - mean_steps));
    }
    const double stderr_steps =
        trials > 1 ? std::sqrt(var_acc.value() / (static_cast<double>(trials) *
                                                  static_cast<double>(trials - 1)))
                   : 0.0;

    Table table;
    table.columns = {"trial", "steps", "outcome"};
    for (std::int64_t i = 0; i < trials; ++i) {
        table.add_row({static_cast<double>(i), steps[static_cast<std::size_t>(i)],
                       outcomes[static_cast<std::size_t>(i)]});
    }

    ResultRecord record;
    record.config_hash = config.config_hash;
    record.summary["mean_steps"] = mean_steps;
    record.summary["stderr_steps"] = stderr_steps;
    record.summary["tau_c"] = mean_steps * constants.planck_time;
    record.summary["tau_stderr"] = stderr_steps * constants.planck_time;
    record.summary["branch1_fraction"] =
        static_cast<double>(to_branch1) / static_cast<double>(trials);
    record.summary["oscillation_period"] = oscillation_period(delta_e, constants.hbar);
    record.summary["timed_out"] = static_cast<double>(timed_out);
    record.summary["trials"] = static_cast<double>(trials);
    record.exit_hint = timed_out > 0 ? 4 : 0;
    add_csv(record, "trials.csv", table);
    return record;
}

ResultRecord run_planck(const ExperimentConfig& config, Execution) {
    const PlanckConfig& p = *config.planck;
    const PhysicalConstants constants =
        p.si ? PhysicalConstants::si() : PhysicalConstants::natural();

    std::vector<double> lengths(static_cast<std::size_t>(p.points));
    const double log_lo = std::log(p.l_min);
    const double log_hi = std::log(p.l_max);
    for (int i = 0; i < p.points; ++i) {
        lengths[static_cast<std::size_t>(i)] =
            std::exp(log_lo + (log_hi - log_lo) * i / (p.points - 1));
    }

    std::vector<LengthMinimum> minima(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        minima[i] = minimum_measurable_length(lengths[i], constants);
    }
    std::vector<double> dl(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        dl[i] = minima[i].dl_min;
    }
    const double exponent = fit_log_slope(lengths, dl);

    double ratio_lo = 1e300;
    double ratio_hi = -1e300;
    Table table;
    table.columns = {"L", "m_star", "dl_qm", "dl_gr", "dl_min", "exponent_fit"};
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const ClockSpec clock{minima[i].m_star, lengths[i]};
        const double ratio =
            dl[i] / std::cbrt(lengths[i] * constants.planck_length * constants.planck_length);
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
        table.add_row({lengths[i], minima[i].m_star, length_uncertainty_qm(clock, constants),
                       length_uncertainty_gr(clock, constants), dl[i], exponent});
    }

    ResultRecord record;
    record.config_hash = config.config_hash;
    record.summary["fitted_exponent"] = exponent;
    record.summary["ratio_to_cube_root_min"] = ratio_lo;
    record.summary["ratio_to_cube_root_max"] = ratio_hi;
    add_csv(record, "planck.csv", table);
    return record;
}

std::string render_summary_json(const ResultRecord& record, const ExperimentConfig& config) {
    json j;
    j["config"] = json::parse(config.echo);
    j["config_hash"] = hex16(record.config_hash);
    j["csv"] = record.csv_names;
    j["experiment"] = record.experiment;
    j["summary"] = json::object();
    for (const auto& [key, value] : record.summary) {
        j["summary"][key] = value;
    }
    j["version"] = record.version;
    return j.dump(2) + "\n";
}

void apply_override(json& node, const std::string& path, double value) {
    json* cursor = &node;
    std::size_t begin = 0;
    while (true) {
        const std::size_t dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot - begin);
        if (dot == std::string::npos) {
            // Integral values are stored as integers so integer-typed fields
            // (trials, n_points, ...) stay sweepable.
            if (value == std::floor(value) && std::abs(value) < 9.0e15) {
                (*cursor)[key] = static_cast<std::int64_t>(value);
            } else {
                (*cursor)[key] = value;
            }
            return;
        }
        cursor = &(*cursor)[key];
        begin = dot + 1;
    }
}

}  // namespace

ResultRecord run_experiment(const ExperimentConfig& config, Execution ex) {
    const auto start = std::chrono::steady_clock::now();
    ResultRecord record = [&] {
        if (config.experiment == "double_slit") {
            return run_double_slit(config, ex);
        }
        if (config.experiment == "free_packet") {
            return run_free_packet(config, ex);
        }
        if (config.experiment == "sample") {
            return run_sample(config, ex);
        }
        if (config.experiment == "protect") {
            return run_protect(config, ex);
        }
        if (config.experiment == "collapse") {
            return run_collapse(config, ex);
        }
        if (config.experiment == "planck") {
            return run_planck(config, ex);
        }
        throw ConfigError("unknown experiment: " + config.experiment);
    }();
    record.experiment = config.experiment;
    record.version = kVersion;
    record.config_hash = config.config_hash;
    record.summary_json = render_summary_json(record, config);
    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

ResultRecord run_sweep(const ExperimentConfig& config, Execution ex) {
    const auto start = std::chrono::steady_clock::now();
    // An empty parameter grid is legal and yields a header-only table.
    std::int64_t total = config.sweep.empty() ? 0 : 1;
    for (const auto& axis : config.sweep) {
        total *= static_cast<std::int64_t>(axis.values.size());
    }
    if (total > 10000) {
        throw ConfigError("sweep exceeds 10000 points");
    }

    json base = json::parse(config.echo);
    base.erase("sweep");

    struct PointResult {
        std::vector<double> axis_values;
        bool ok = false;
        std::map<std::string, double> summary;
    };
    std::vector<PointResult> points(static_cast<std::size_t>(total));
    const std::size_t n_axes = config.sweep.size();
    for_each_index(total, ex, [&](std::int64_t index) {
        PointResult& point = points[static_cast<std::size_t>(index)];
        json node = base;
        std::int64_t rest = index;
        point.axis_values.resize(n_axes);
        for (std::size_t a = 0; a < n_axes; ++a) {
            const auto& axis = config.sweep[a];
            const std::size_t pick = static_cast<std::size_t>(
                rest % static_cast<std::int64_t>(axis.values.size()));
            rest /= static_cast<std::int64_t>(axis.values.size());
            point.axis_values[a] = axis.values[pick];
            apply_override(node, axis.path, axis.values[pick]);
        }
        node["seed"] = SeededRng::derive(config.seed, static_cast<std::uint64_t>(index));
        try {
            const ExperimentConfig point_config = detail::load_config_json(node);
            const ResultRecord result = run_experiment(point_config, Execution::serial);
            point.summary = result.summary;
            point.ok = true;
        } catch (const std::exception&) {
            point.ok = false;
        }
    });

    // Column set: swept axes, then the summary keys of the first successful
    // point (sorted); failed points render zeros with ok = 0.
    std::vector<std::string> summary_keys;
    for (const auto& point : points) {
        if (point.ok) {
            for (const auto& [key, value] : point.summary) {
                summary_keys.push_back(key);
            }
            break;
        }
    }
    Table table;
    table.columns.push_back("point_index");
    for (const auto& axis : config.sweep) {
        table.columns.push_back(axis.path);
    }
    table.columns.push_back("ok");
    for (const auto& key : summary_keys) {
        table.columns.push_back(key);
    }
    std::int64_t failures = 0;
    for (std::int64_t index = 0; index < total; ++index) {
        const PointResult& point = points[static_cast<std::size_t>(index)];
        std::vector<double> row;
        row.push_back(static_cast<double>(index));
        for (double v : point.axis_values) {
            row.push_back(v);
        }
        row.push_back(point.ok ? 1.0 : 0.0);
        for (const auto& key : summary_keys) {
            const auto it = point.summary.find(key);
            row.push_back(it == point.summary.end() ? 0.0 : it->second);
        }
        table.rows.push_back(std::move(row));
        failures += point.ok ? 0 : 1;
    }

    ResultRecord record;
    record.experiment = "sweep_" + config.experiment;
    record.version = kVersion;
    record.config_hash = config.config_hash;
    record.summary["points"] = static_cast<double>(total);
    record.summary["failures"] = static_cast<double>(failures);

    // Single-axis power-law readout when every successful point reports tau_c.
    if (n_axes == 1 && failures < total) {
        std::vector<double> xs, ys;
        bool usable = true;
        for (const auto& point : points) {
            if (!point.ok) {
                continue;
            }
            const auto it = point.summary.find("tau_c");
            if (it == point.summary.end() || !(it->second > 0.0) ||
                !(point.axis_values[0] > 0.0)) {
                usable = false;
                break;
            }
            xs.push_back(point.axis_values[0]);
            ys.push_back(it->second);
        }
        if (usable && xs.size() >= 2) {
            record.summary["fitted_exponent"] = fit_log_slope(xs, ys);
        }
    }

    add_csv(record, "sweep.csv", table);
    record.summary_json = render_summary_json(record, config);
    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

std::filesystem::path persist(const ResultRecord& record, const ExperimentConfig& config) {
    const char* env_root = std::getenv("DQM_OUT_DIR");
    const std::filesystem::path root = env_root ? env_root : config.output_path;
    const std::filesystem::path dir =
        root / (record.experiment + "_" + hex16(record.config_hash));
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < record.csv_names.size(); ++i) {
        write_text_file(dir / record.csv_names[i], record.csv_payloads[i]);
    }
    write_text_file(dir / "summary.json", record.summary_json);
    return dir;
}

}  // namespace dqm
