#include <cmath>
#include <set>
#include <utility>

#include "config_internal.hpp"
#include "dqm/errors.hpp"
#include "dqm/numeric.hpp"

namespace dqm {
namespace {

using nlohmann::json;

// Reads one JSON object, accumulating problems (missing keys, bad types, bad
// ranges) instead of failing fast, and flagging unknown keys at the end.
class ObjReader {
public:
    ObjReader(const json& node, std::string path, std::vector<std::string>& problems)
        : node_(node), path_(std::move(path)), problems_(problems) {}

    bool has(const char* key) const { return node_.contains(key); }

    double number(const char* key, std::optional<double> fallback = {}) {
        seen_.insert(key);
        if (!node_.contains(key)) {
            if (!fallback) {
                problem(key, "is required");
            }
            return fallback.value_or(0.0);
        }
        const json& v = node_.at(key);
        if (!v.is_number()) {
            problem(key, "must be a number");
            return fallback.value_or(0.0);
        }
        return v.get<double>();
    }

    std::int64_t integer(const char* key, std::optional<std::int64_t> fallback = {}) {
        seen_.insert(key);
        if (!node_.contains(key)) {
            if (!fallback) {
                problem(key, "is required");
            }
            return fallback.value_or(0);
        }
        const json& v = node_.at(key);
        if (!v.is_number_integer()) {
            problem(key, "must be an integer");
            return fallback.value_or(0);
        }
        return v.get<std::int64_t>();
    }

    std::uint64_t uinteger(const char* key, std::optional<std::uint64_t> fallback = {}) {
        seen_.insert(key);
        if (!node_.contains(key)) {
            if (!fallback) {
                problem(key, "is required");
            }
            return fallback.value_or(0);
        }
        const json& v = node_.at(key);
        if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0))) {
            problem(key, "must be a non-negative integer");
            return fallback.value_or(0);
        }
        return v.get<std::uint64_t>();
    }

    bool flag(const char* key, bool fallback) {
        seen_.insert(key);
        if (!node_.contains(key)) {
            return fallback;
        }
        const json& v = node_.at(key);
        if (!v.is_boolean()) {
            problem(key, "must be a boolean");
            return fallback;
        }
        return v.get<bool>();
    }

    std::string text(const char* key, std::optional<std::string> fallback = {},
                     std::initializer_list<const char*> allowed = {}) {
        seen_.insert(key);
        if (!node_.contains(key)) {
            if (!fallback) {
                problem(key, "is required");
            }
            return fallback.value_or("");
        }
        const json& v = node_.at(key);
        if (!v.is_string()) {
            problem(key, "must be a string");
            return fallback.value_or("");
        }
        const std::string s = v.get<std::string>();
        if (allowed.size() > 0) {
            bool ok = false;
            for (const char* a : allowed) {
                if (s == a) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                std::string msg = "must be one of {";
                bool first = true;
                for (const char* a : allowed) {
                    if (!first) {
                        msg += ", ";
                    }
                    msg += a;
                    first = false;
                }
                msg += "}";
                problem(key, msg.c_str());
            }
        }
        return s;
    }

    const json* child(const char* key) {
        seen_.insert(key);
        if (!node_.contains(key)) {
            return nullptr;
        }
        const json& v = node_.at(key);
        if (!v.is_object()) {
            problem(key, "must be an object");
            return nullptr;
        }
        return &v;
    }

    void require(bool condition, const char* key, const char* message) {
        if (!condition) {
            problem(key, message);
        }
    }

    void check_unknown() {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!seen_.count(it.key())) {
                problems_.push_back("unknown key: " + join(it.key()));
            }
        }
    }

    std::string join(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    void problem(const char* key, const char* message) {
        problems_.push_back(join(key) + " " + message);
    }

    const json& node_;
    std::string path_;
    std::vector<std::string>& problems_;
    std::set<std::string> seen_;
};

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridConfig parse_grid(const json& node, std::vector<std::string>& problems) {
    ObjReader r(node, "grid", problems);
    GridConfig g;
    g.x_min = r.number("x_min");
    g.x_max = r.number("x_max");
    g.dt = r.number("dt");
    g.n_points = static_cast<int>(r.integer("n_points"));
    const std::string b = r.text("boundary", {}, {"periodic", "hard_wall"});
    g.boundary = b == "hard_wall" ? Boundary::hard_wall : Boundary::periodic;
    r.require(g.x_max > g.x_min, "x_max", "must exceed x_min");
    r.require(g.dt > 0.0, "dt", "must be positive");
    r.require(g.n_points >= 8, "n_points", "must be at least 8");
    if (g.boundary == Boundary::periodic) {
        r.require(is_power_of_two(g.n_points), "n_points",
                  "must be a power of two on a periodic grid");
    }
    r.check_unknown();
    return g;
}

StateConfig parse_state(const json& node, const std::string& experiment,
                        std::vector<std::string>& problems) {
    ObjReader r(node, "state", problems);
    StateConfig s;
    if (experiment == "double_slit") {
        s.kind = "two_slit";
        s.sigma = r.number("sigma");
        s.slit_separation = r.number("slit_separation");
        s.p0 = r.number("p0", 0.0);
        s.amplitude_b = r.number("amplitude_b", 1.0);
        r.require(s.sigma > 0.0, "sigma", "must be positive");
        r.require(s.slit_separation > 0.0, "slit_separation", "must be positive");
    } else if (experiment == "free_packet") {
        s.kind = "gaussian";
        s.x0 = r.number("x0");
        s.sigma = r.number("sigma");
        s.p0 = r.number("p0", 0.0);
        r.require(s.sigma > 0.0, "sigma", "must be positive");
    } else {  // sample
        s.kind = r.text("kind", {}, {"gaussian", "uniform", "well_ground"});
        if (s.kind == "gaussian") {
            s.x0 = r.number("x0");
            s.sigma = r.number("sigma");
            s.p0 = r.number("p0", 0.0);
            r.require(s.sigma > 0.0, "sigma", "must be positive");
        } else if (s.kind == "well_ground") {
            s.quantum_number = static_cast<int>(r.integer("quantum_number", 1));
            r.require(s.quantum_number >= 1, "quantum_number", "must be at least 1");
        }
    }
    r.check_unknown();
    return s;
}

ScheduleConfig parse_schedule(const json& node, const std::string& experiment,
                              std::vector<std::string>& problems) {
    ObjReader r(node, "schedule", problems);
    ScheduleConfig s;
    s.t_final = r.number("t_final");
    r.require(s.t_final >= 0.0, "t_final", "must be non-negative");
    if (experiment == "sample") {
        s.sample_every = static_cast<int>(r.integer("sample_every", 1));
        r.require(s.sample_every >= 1, "sample_every", "must be at least 1");
    }
    s.n_bins = static_cast<int>(r.integer("n_bins", 100));
    r.require(s.n_bins >= 2, "n_bins", "must be at least 2");
    r.check_unknown();
    return s;
}

ProtectConfig parse_protect(const json& node, std::vector<std::string>& problems) {
    ObjReader r(node, "protect", problems);
    ProtectConfig p;
    p.state = r.text("state", {}, {"well", "ring", "double_well"});
    p.regions = static_cast<int>(r.integer("regions", 10));
    p.duration = r.number("duration", 4.0);
    p.pointer_momentum = r.number("pointer_momentum", 1e-3);
    p.ramp_fraction = r.number("ramp_fraction", 0.2);
    r.require(p.regions >= 1, "regions", "must be at least 1");
    r.require(p.duration > 0.0, "duration", "must be positive");
    r.require(p.ramp_fraction > 0.0 && p.ramp_fraction < 0.5, "ramp_fraction",
              "must lie in (0, 0.5)");
    if (p.state == "well") {
        p.quantum_number = static_cast<int>(r.integer("quantum_number", 1));
        r.require(p.quantum_number >= 1, "quantum_number", "must be at least 1");
    } else if (p.state == "ring") {
        p.k_index = static_cast<int>(r.integer("k_index", 2));
    } else if (p.state == "double_well") {
        p.barrier_height = r.number("barrier_height", 200.0);
        p.barrier_width = r.number("barrier_width", 0.08);
        p.tilt = r.number("tilt", 0.0);
        r.require(p.barrier_height >= 0.0, "barrier_height", "must be non-negative");
        r.require(p.barrier_width > 0.0, "barrier_width", "must be positive");
    }
    r.check_unknown();
    return p;
}

CollapseConfig parse_collapse(const json& node, std::vector<std::string>& problems) {
    ObjReader r(node, "collapse", problems);
    CollapseConfig c;
    c.delta_e_over_ep = r.number("delta_e_over_ep");
    c.rho0 = r.number("rho0", 0.5);
    c.trials = r.integer("trials", 10000);
    c.max_steps = r.integer("max_steps", 1'000'000'000);
    r.require(c.delta_e_over_ep > 0.0 && c.delta_e_over_ep <= 1.0, "delta_e_over_ep",
              "must lie in (0, 1]");
    r.require(c.rho0 >= 0.0 && c.rho0 <= 1.0, "rho0", "must lie in [0, 1]");
    r.require(c.trials >= 100, "trials", "must be at least 100");
    r.require(c.max_steps >= 1, "max_steps", "must be at least 1");
    r.check_unknown();
    return c;
}

PlanckConfig parse_planck(const json& node, std::vector<std::string>& problems) {
    ObjReader r(node, "planck", problems);
    PlanckConfig p;
    p.l_min = r.number("l_min", 1.0);
    p.l_max = r.number("l_max", 1e6);
    p.points = static_cast<int>(r.integer("points", 25));
    p.si = r.flag("si", false);
    r.require(p.l_min > 0.0, "l_min", "must be positive");
    r.require(p.l_max > p.l_min, "l_max", "must exceed l_min");
    r.require(p.points >= 2, "points", "must be at least 2");
    r.check_unknown();
    return p;
}

std::vector<SweepAxis> parse_sweep(const json& node, std::vector<std::string>& problems) {
    std::vector<SweepAxis> axes;
    if (!node.is_object()) {
        problems.push_back("sweep must be an object mapping key paths to value arrays");
        return axes;
    }
    for (auto it = node.begin(); it != node.end(); ++it) {
        SweepAxis axis;
        axis.path = it.key();
        if (!it.value().is_array()) {
            problems.push_back("sweep." + it.key() + " must be an array of numbers");
            continue;
        }
        for (const auto& v : it.value()) {
            if (!v.is_number()) {
                problems.push_back("sweep." + it.key() + " must contain only numbers");
                break;
            }
            axis.values.push_back(v.get<double>());
        }
        axes.push_back(std::move(axis));
    }
    return axes;
}

json effective_json(const ExperimentConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["seed"] = c.seed;
    j["output_path"] = c.output_path;
    if (c.grid) {
        j["grid"] = {{"x_min", c.grid->x_min},
                     {"x_max", c.grid->x_max},
                     {"dt", c.grid->dt},
                     {"n_points", c.grid->n_points},
                     {"boundary", c.grid->boundary == Boundary::periodic ? "periodic"
                                                                         : "hard_wall"}};
    }
    if (c.state) {
        json s;
        s["kind"] = c.state->kind;
        if (c.state->kind == "two_slit") {
            s["sigma"] = c.state->sigma;
            s["slit_separation"] = c.state->slit_separation;
            s["p0"] = c.state->p0;
            s["amplitude_b"] = c.state->amplitude_b;
        } else if (c.state->kind == "gaussian") {
            s["x0"] = c.state->x0;
            s["sigma"] = c.state->sigma;
            s["p0"] = c.state->p0;
        } else if (c.state->kind == "well_ground") {
            s["quantum_number"] = c.state->quantum_number;
        }
        j["state"] = s;
    }
    if (c.schedule) {
        json s;
        s["t_final"] = c.schedule->t_final;
        if (c.experiment == "sample") {
            s["sample_every"] = c.schedule->sample_every;
        }
        s["n_bins"] = c.schedule->n_bins;
        j["schedule"] = s;
    }
    if (c.protect) {
        json p;
        p["state"] = c.protect->state;
        p["regions"] = c.protect->regions;
        p["duration"] = c.protect->duration;
        p["pointer_momentum"] = c.protect->pointer_momentum;
        p["ramp_fraction"] = c.protect->ramp_fraction;
        if (c.protect->state == "well") {
            p["quantum_number"] = c.protect->quantum_number;
        } else if (c.protect->state == "ring") {
            p["k_index"] = c.protect->k_index;
        } else if (c.protect->state == "double_well") {
            p["barrier_height"] = c.protect->barrier_height;
            p["barrier_width"] = c.protect->barrier_width;
            p["tilt"] = c.protect->tilt;
        }
        j["protect"] = p;
    }
    if (c.collapse) {
        j["collapse"] = {{"delta_e_over_ep", c.collapse->delta_e_over_ep},
                         {"rho0", c.collapse->rho0},
                         {"trials", c.collapse->trials},
                         {"max_steps", c.collapse->max_steps}};
    }
    if (c.planck) {
        j["planck"] = {{"l_min", c.planck->l_min},
                       {"l_max", c.planck->l_max},
                       {"points", c.planck->points},
                       {"si", c.planck->si}};
    }
    if (!c.sweep.empty()) {
        json s = json::object();
        for (const auto& axis : c.sweep) {
            s[axis.path] = axis.values;
        }
        j["sweep"] = s;
    }
    return j;
}

}  // namespace

namespace detail {

ExperimentConfig load_config_json(const json& root) {
    std::vector<std::string> problems;
    if (!root.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    ObjReader r(root, "", problems);
    ExperimentConfig c;
    c.experiment = r.text("experiment", {},
                          {"double_slit", "free_packet", "protect", "collapse", "planck",
                           "sample"});
    if (!root.contains("seed")) {
        problems.push_back("seed is required (reproducibility policy)");
        r.uinteger("seed", 0);
    } else {
        c.seed = r.uinteger("seed");
    }
    c.output_path = r.text("output_path", std::string("out"));

    const bool needs_grid = c.experiment == "double_slit" || c.experiment == "free_packet" ||
                            c.experiment == "sample" || c.experiment == "protect";
    const bool needs_state = c.experiment == "double_slit" || c.experiment == "free_packet" ||
                             c.experiment == "sample";
    const bool needs_schedule = needs_state;

    if (const json* g = r.child("grid")) {
        c.grid = parse_grid(*g, problems);
    } else if (needs_grid) {
        problems.push_back("grid section is required for experiment " + c.experiment);
    }
    if (const json* s = r.child("state")) {
        c.state = parse_state(*s, c.experiment, problems);
    } else if (needs_state) {
        problems.push_back("state section is required for experiment " + c.experiment);
    }
    if (const json* s = r.child("schedule")) {
        c.schedule = parse_schedule(*s, c.experiment, problems);
    } else if (needs_schedule) {
        problems.push_back("schedule section is required for experiment " + c.experiment);
    }
    if (const json* p = r.child("protect")) {
        c.protect = parse_protect(*p, problems);
    } else if (c.experiment == "protect") {
        problems.push_back("protect section is required for experiment protect");
    }
    if (const json* p = r.child("collapse")) {
        c.collapse = parse_collapse(*p, problems);
    } else if (c.experiment == "collapse") {
        problems.push_back("collapse section is required for experiment collapse");
    }
    if (const json* p = r.child("planck")) {
        c.planck = parse_planck(*p, problems);
    } else if (c.experiment == "planck") {
        c.planck = PlanckConfig{};
    }
    if (const json* s = r.child("sweep")) {
        c.sweep = parse_sweep(*s, problems);
    }

    // Cross-section constraints that need more than one field.
    if (c.grid && c.experiment == "double_slit" &&
        c.grid->boundary != Boundary::periodic) {
        problems.push_back("grid.boundary must be periodic for double_slit");
    }
    if (c.grid && c.state && c.state->kind == "uniform" &&
        c.grid->boundary != Boundary::periodic) {
        problems.push_back("state.kind uniform requires a periodic grid");
    }
    if (c.grid && c.state && c.state->kind == "well_ground" &&
        c.grid->boundary != Boundary::hard_wall) {
        problems.push_back("state.kind well_ground requires a hard_wall grid");
    }
    if (c.grid && c.protect) {
        if (c.protect->state == "ring" && c.grid->boundary != Boundary::periodic) {
            problems.push_back("protect.state ring requires a periodic grid");
        }
        if (c.protect->state != "ring" && c.grid->boundary != Boundary::hard_wall) {
            problems.push_back("protect.state " + c.protect->state +
                               " requires a hard_wall grid");
        }
        if (c.protect->regions > std::max(1, c.grid->n_points)) {
            problems.push_back("protect.regions must not exceed grid.n_points");
        }
    }
    r.check_unknown();

    if (!problems.empty()) {
        std::string msg = "invalid config:";
        for (const auto& p : problems) {
            msg += "\n  - " + p;
        }
        throw ConfigError(msg);
    }

    const json echo = effective_json(c);
    c.echo = echo.dump();
    c.config_hash = fnv1a64(c.echo);
    return c;
}

}  // namespace detail

ExperimentConfig load_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return detail::load_config_json(root);
}

Grid1D GridConfig::make() const {
    return boundary == Boundary::periodic
               ? Grid1D::periodic(x_min, x_max, n_points, dt)
               : Grid1D::hard_wall(x_min, x_max, n_points, dt);
}

}  // namespace dqm
