#include "dqm/io.hpp"

#include <cstdio>
#include <fstream>

#include "dqm/errors.hpp"
#include "dqm/measure.hpp"

namespace dqm {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void Table::add_row(std::initializer_list<double> values) {
    rows.emplace_back(values);
}

std::string to_csv(const Table& table, std::uint64_t config_hash) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) {
            out += ',';
        }
        out += table.columns[c];
    }
    out += '\n';
    char hash_buf[40];
    std::snprintf(hash_buf, sizeof(hash_buf), "# config_hash=%016llx\n",
                  static_cast<unsigned long long>(config_hash));
    out += hash_buf;
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out += ',';
            }
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot open output file: " + path.string());
    }
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) {
        throw Error("write failed: " + path.string());
    }
}

Table wavefunction_table(const WaveFunction& psi) {
    Table t;
    t.columns = {"x", "re", "im", "rho"};
    for (int i = 0; i < psi.size(); ++i) {
        const auto a = psi[i];
        t.add_row({psi.grid().x(i), a.real(), a.imag(), std::norm(a)});
    }
    return t;
}

Table momentum_table(const MomentumState& ms) {
    Table t;
    t.columns = {"p", "re_phi", "im_phi", "f"};
    for (std::size_t k = 0; k < ms.p.size(); ++k) {
        t.add_row({ms.p[k], ms.phi[k].real(), ms.phi[k].imag(), ms.f[k]});
    }
    return t;
}

Table trajectory_table(const PointSetTrajectory& traj) {
    Table t;
    t.columns = {"t", "x"};
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        t.add_row({traj.t[k], traj.x[k]});
    }
    return t;
}

Table histogram_table(const Histogram& hist) {
    Table t;
    t.columns = {"x_center", "density"};
    for (std::size_t b = 0; b < hist.centers.size(); ++b) {
        t.add_row({hist.centers[b], hist.density[b]});
    }
    return t;
}

}  // namespace dqm
