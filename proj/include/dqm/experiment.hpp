#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqm/grid.hpp"
#include "dqm/parallel.hpp"

namespace dqm {

struct GridConfig {
    double x_min = 0.0;
    double x_max = 0.0;
    double dt = 0.0;
    int n_points = 0;
    Boundary boundary = Boundary::periodic;

    Grid1D make() const;
};

struct StateConfig {
    std::string kind;  // "gaussian", "uniform", "well_ground", "two_slit"
    double x0 = 0.0;
    double sigma = 1.0;
    double p0 = 0.0;
    double slit_separation = 0.0;
    double amplitude_b = 1.0;
    int quantum_number = 1;
};

struct ScheduleConfig {
    double t_final = 0.0;
    int sample_every = 1;
    int n_bins = 100;
};

struct ProtectConfig {
    std::string state;  // "well", "ring", "double_well"
    int regions = 10;
    double duration = 4.0;
    double pointer_momentum = 1e-3;
    double ramp_fraction = 0.2;
    int quantum_number = 1;      // well state
    int k_index = 2;             // ring state
    double barrier_height = 0.0; // double well bump
    double barrier_width = 0.1;
    double tilt = 0.0;           // linear bias; 0 keeps the well symmetric
};

struct CollapseConfig {
    double delta_e_over_ep = 0.1;
    double rho0 = 0.5;
    std::int64_t trials = 10000;
    std::int64_t max_steps = 1'000'000'000;
};

struct PlanckConfig {
    double l_min = 1.0;
    double l_max = 1e6;
    int points = 25;
    bool si = false;
};

struct SweepAxis {
    std::string path;  // dotted key into the config, e.g. "collapse.delta_e_over_ep"
    std::vector<double> values;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string output_path = "out";
    std::optional<GridConfig> grid;
    std::optional<StateConfig> state;
    std::optional<ScheduleConfig> schedule;
    std::optional<ProtectConfig> protect;
    std::optional<CollapseConfig> collapse;
    std::optional<PlanckConfig> planck;
    std::vector<SweepAxis> sweep;

    std::string echo;             // effective config (defaults filled), canonical JSON
    std::uint64_t config_hash = 0;
};

/// Parses and fully validates a JSON config. Reports every violation at once,
/// each prefixed with its field path. The seed is mandatory.
ExperimentConfig load_config(const std::string& text);

struct ResultRecord {
    std::string experiment;
    std::string version;
    std::uint64_t config_hash = 0;
    std::vector<std::string> csv_names;
    std::vector<std::string> csv_payloads;  // exact bytes, same order as csv_names
    std::map<std::string, double> summary;
    std::string summary_json;               // exact bytes of summary.json
    double duration_seconds = 0.0;          // measured, not part of the payload
    int exit_hint = 0;                      // 4 when any stochastic trial timed out
};

/// Runs the configured experiment. Pure with respect to the filesystem; use
/// persist() to write the artifacts.
ResultRecord run_experiment(const ExperimentConfig& config,
                            Execution ex = Execution::openmp);

/// Cross-product parameter sweep with per-point derived seeds. Point failures
/// are recorded in the aggregate table and the sweep continues.
ResultRecord run_sweep(const ExperimentConfig& config, Execution ex = Execution::openmp);

/// Writes all artifacts under <out_root>/<experiment>_<hash>/ where out_root
/// is DQM_OUT_DIR when set, else the config's output_path. Returns the
/// directory.
std::filesystem::path persist(const ResultRecord& record, const ExperimentConfig& config);

}  // namespace dqm
