#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dqm/grid.hpp"
#include "dqm/measure.hpp"
#include "dqm/sampler.hpp"

namespace dqm {

/// Scientific notation with 17 significant digits; round-trips exactly.
std::string format_number(double v);

/// Column-oriented numeric table rendered as CSV: one header row naming the
/// columns, one comment row carrying the config hash, then data rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::initializer_list<double> values);
};

std::string to_csv(const Table& table, std::uint64_t config_hash);

void write_text_file(const std::filesystem::path& path, const std::string& text);

Table wavefunction_table(const WaveFunction& psi);        // x, re, im, rho
Table momentum_table(const MomentumState& ms);            // p, re_phi, im_phi, f
Table trajectory_table(const PointSetTrajectory& traj);   // t, x
Table histogram_table(const Histogram& hist);             // x_center, density

}  // namespace dqm
