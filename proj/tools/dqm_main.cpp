#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqm/errors.hpp"
#include "dqm/experiment.hpp"
#include "dqm/version.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw dqm::ConfigError("cannot read config file: " + path);
    }
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

int finish(const dqm::ResultRecord& record, const dqm::ExperimentConfig& config,
           bool echo_first_csv) {
    const auto dir = dqm::persist(record, config);
    if (echo_first_csv && !record.csv_payloads.empty()) {
        std::fputs(record.csv_payloads.front().c_str(), stdout);
    }
    std::fprintf(stderr, "wrote %s (%.2fs)\n", dir.string().c_str(),
                 record.duration_seconds);
    for (const auto& [key, value] : record.summary) {
        std::fprintf(stderr, "  %s = %.10g\n", key.c_str(), value);
    }
    return record.exit_hint;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"1D quantum dynamics laboratory"};
    app.set_version_flag("--version", dqm::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    auto* cmd_run = app.add_subcommand("run", "run one experiment from a JSON config");
    cmd_run->add_option("config", config_path, "config file")->required();
    auto* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep from a JSON config");
    cmd_sweep->add_option("config", config_path, "config file")->required();

    // Planck table; prints the CSV to stdout.
    auto* cmd_planck = app.add_subcommand("planck", "minimum measurable length table");
    double l_min = 1.0, l_max = 1e6;
    int points = 25;
    bool si = false;
    std::uint64_t planck_seed = 0;
    std::string out_root = "out";
    cmd_planck->add_option("--l-min", l_min, "smallest length");
    cmd_planck->add_option("--l-max", l_max, "largest length");
    cmd_planck->add_option("--points", points, "table rows");
    cmd_planck->add_flag("--si", si, "SI constants instead of natural units");
    cmd_planck->add_option("--seed", planck_seed, "config seed (no RNG involved)");
    cmd_planck->add_option("--out", out_root, "output root directory");

    // Protective tomography driven by flags.
    auto* cmd_protect = app.add_subcommand("protect", "protective measurement tomography");
    std::string protect_state = "well";
    int regions = 10, n_points = 200, quantum_number = 1, k_index = 2;
    double duration = 4.0, pointer_momentum = 1e-3, ramp_fraction = 0.2;
    double x_min = 0.0, x_max = 1.0, dt = 0.002;
    double barrier_height = 200.0, barrier_width = 0.08, tilt = 0.0;
    std::uint64_t protect_seed = 0;
    cmd_protect->add_option("--state", protect_state, "well | ring | double_well");
    cmd_protect->add_option("--regions", regions, "partition size");
    cmd_protect->add_option("--duration", duration, "measurement duration T");
    cmd_protect->add_option("--pointer-momentum", pointer_momentum, "conserved coupling P");
    cmd_protect->add_option("--ramp-fraction", ramp_fraction, "schedule ramp fraction");
    cmd_protect->add_option("--n-points", n_points, "grid cells");
    cmd_protect->add_option("--x-min", x_min, "domain start");
    cmd_protect->add_option("--x-max", x_max, "domain end");
    cmd_protect->add_option("--dt", dt, "time step");
    cmd_protect->add_option("--quantum-number", quantum_number, "well level");
    cmd_protect->add_option("--k-index", k_index, "ring wave index");
    cmd_protect->add_option("--barrier-height", barrier_height, "double-well bump height");
    cmd_protect->add_option("--barrier-width", barrier_width, "double-well bump width");
    cmd_protect->add_option("--tilt", tilt, "double-well linear bias");
    cmd_protect->add_option("--seed", protect_seed, "config seed");
    cmd_protect->add_option("--out", out_root, "output root directory");

    // Two-level collapse trials driven by flags.
    auto* cmd_collapse = app.add_subcommand("collapse", "two-level collapse statistics");
    double delta_e = 0.1, rho0 = 0.5;
    std::int64_t trials = 10000, max_steps = 1'000'000'000;
    std::uint64_t collapse_seed = 0;
    bool collapse_seed_set = false;
    cmd_collapse->add_option("--delta-e", delta_e, "energy gap in Planck-energy units");
    cmd_collapse->add_option("--rho0", rho0, "initial branch-1 measure");
    cmd_collapse->add_option("--trials", trials, "Monte Carlo trials");
    cmd_collapse->add_option("--max-steps", max_steps, "per-trial step budget");
    cmd_collapse->add_option("--seed", collapse_seed, "RNG seed")
        ->each([&](const std::string&) { collapse_seed_set = true; });
    cmd_collapse->add_option("--out", out_root, "output root directory");

    app.parse(argc, argv);

    if (cmd_run->parsed() || cmd_sweep->parsed()) {
        const dqm::ExperimentConfig config = dqm::load_config(read_file(config_path));
        const dqm::ResultRecord record = cmd_sweep->parsed() ? dqm::run_sweep(config)
                                                             : dqm::run_experiment(config);
        return finish(record, config, config.experiment == "planck");
    }
    if (cmd_planck->parsed()) {
        json j;
        j["experiment"] = "planck";
        j["seed"] = planck_seed;
        j["output_path"] = out_root;
        j["planck"] = {{"l_min", l_min}, {"l_max", l_max}, {"points", points}, {"si", si}};
        const dqm::ExperimentConfig config = dqm::load_config(j.dump());
        return finish(dqm::run_experiment(config), config, true);
    }
    if (cmd_protect->parsed()) {
        json j;
        j["experiment"] = "protect";
        j["seed"] = protect_seed;
        j["output_path"] = out_root;
        j["grid"] = {{"x_min", x_min},
                     {"x_max", x_max},
                     {"n_points", n_points},
                     {"dt", dt},
                     {"boundary", protect_state == "ring" ? "periodic" : "hard_wall"}};
        json p;
        p["state"] = protect_state;
        p["regions"] = regions;
        p["duration"] = duration;
        p["pointer_momentum"] = pointer_momentum;
        p["ramp_fraction"] = ramp_fraction;
        if (protect_state == "well") {
            p["quantum_number"] = quantum_number;
        } else if (protect_state == "ring") {
            p["k_index"] = k_index;
        } else {
            p["barrier_height"] = barrier_height;
            p["barrier_width"] = barrier_width;
            p["tilt"] = tilt;
        }
        j["protect"] = p;
        const dqm::ExperimentConfig config = dqm::load_config(j.dump());
        return finish(dqm::run_experiment(config), config, false);
    }
    if (cmd_collapse->parsed()) {
        if (!collapse_seed_set) {
            throw dqm::ConfigError("--seed is required for collapse runs");
        }
        json j;
        j["experiment"] = "collapse";
        j["seed"] = collapse_seed;
        j["output_path"] = out_root;
        j["collapse"] = {{"delta_e_over_ep", delta_e},
                         {"rho0", rho0},
                         {"trials", trials},
                         {"max_steps", max_steps}};
        const dqm::ExperimentConfig config = dqm::load_config(j.dump());
        return finish(dqm::run_experiment(config), config, false);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App app;
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const dqm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dqm::TimeoutError& e) {
        std::fprintf(stderr, "timeout: %s\n", e.what());
        return 4;
    } catch (const dqm::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
