#include "vsw/config.hpp"

#include "vsw/errors.hpp"
#include "vsw/io.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace vsw {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json modes_to_json(const std::vector<Mode>& modes) {
    json arr = json::array();
    for (const auto& m : modes) arr.push_back({{"k", m.k}, {"cos", m.cos}, {"sin", m.sin}});
    return arr;
}

// Reads an optional key; type mismatches are reported with the dotted path.
template <class T>
void read(const json& obj, const char* key, const std::string& path, T& out) {
    if (!obj.is_object() || !obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(path, std::string("wrong type: ") + e.what());
    }
}

std::vector<Mode> read_modes(const json& arr, const std::string& path) {
    if (!arr.is_array()) throw ConfigError(path, "must be an array of {k, cos, sin}");
    std::vector<Mode> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        Mode m;
        read(arr[i], "k", p + ".k", m.k);
        read(arr[i], "cos", p + ".cos", m.cos);
        read(arr[i], "sin", p + ".sin", m.sin);
        out.push_back(m);
    }
    return out;
}

void require_finite(double x, const char* field) {
    if (!std::isfinite(x)) throw ConfigError(field, "must be finite");
}

} // namespace

void ExperimentConfig::validate() const {
    gas.validate();
    require_finite(v_plus, "shock.v_plus");
    require_finite(u_plus, "shock.u_plus");
    if (!(v_plus > 0.0)) throw ConfigError("shock.v_plus", "must be > 0");
    if (!(u_plus < 0.0)) throw ConfigError("shock.u_plus", "must be < 0");
    if (!(beta1 > 0.0)) throw ConfigError("beta1", "must be > 0");
    if (!(perturbation.epsilon >= 0.0)) throw ConfigError("perturbation.epsilon", "must be >= 0");
    if (!(perturbation.period > 0.0)) throw ConfigError("perturbation.period", "must be > 0");
    for (const auto& m : perturbation.zeta_modes)
        if (m.k < 1) throw ConfigError("perturbation.zeta_modes", "wavenumber index k must be >= 1");
    for (const auto& m : perturbation.phi_modes)
        if (m.k < 1) throw ConfigError("perturbation.phi_modes", "wavenumber index k must be >= 1");
    if (n_cells < 8) throw ConfigError("periodic.n_cells", "must be >= 8");
    if (!(record_dt > 0.0)) throw ConfigError("periodic.record_dt", "must be > 0");
    if (!(dx > 0.0)) throw ConfigError("grid.dx", "must be > 0");
    if (!(length >= 0.0)) throw ConfigError("grid.length", "must be >= 0");
    if (!(t_end >= 0.0)) throw ConfigError("time.t_end", "must be >= 0");
    if (!(snapshot_dt > 0.0)) throw ConfigError("time.snapshot_dt", "must be > 0");
    for (double t : snapshot_times)
        if (!(t >= 0.0 && t <= t_end)) throw ConfigError("time.snapshots", "times must lie in [0, t_end]");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("grid.cfl", "must lie in (0, 1]");
    if (!(bump.width > 0.0)) throw ConfigError("bump.width", "must be > 0");
    if (sweep.values.empty()) throw ConfigError("sweep.values", "must not be empty");
}

std::vector<double> ExperimentConfig::output_times() const {
    if (!snapshot_times.empty()) return snapshot_times;
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor(t_end / snapshot_dt + 1e-9));
    for (long k = 0; k <= count; ++k) out.push_back(static_cast<double>(k) * snapshot_dt);
    if (t_end - out.back() > 1e-9 * std::max(1.0, t_end)) out.push_back(t_end);
    return out;
}

ExperimentConfig reference_config() {
    ExperimentConfig c;
    c.gas = physical_gas();
    c.v_plus = 2.0;
    const double v_minus = 1.0;
    c.u_plus = -std::sqrt((pressure(c.gas, v_minus) - pressure(c.gas, c.v_plus)) * (c.v_plus - v_minus));
    c.beta1 = 15.0;
    c.perturbation.period = std::numbers::pi;
    c.perturbation.epsilon = 1e-2;
    c.perturbation.zeta_modes = {Mode{1, 1.0, 0.0}};
    c.perturbation.phi_modes = {Mode{1, 0.0, 1.0}};
    return c;
}

std::string apply_overrides(const std::string& text, const std::vector<std::string>& overrides) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
    }
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError(ov, "override must have the form KEY=VALUE");
        const std::string key = ov.substr(0, eq);
        const std::string val = ov.substr(eq + 1);
        json parsed;
        try {
            parsed = json::parse(val);
        } catch (const json::exception&) {
            parsed = val;
        }
        json* node = &j;
        std::size_t start = 0;
        while (true) {
            const auto dot = key.find('.', start);
            const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (part.empty()) throw ConfigError(key, "empty path component");
            if (!node->is_object()) throw ConfigError(key, "path crosses a non-object value");
            if (dot == std::string::npos) {
                (*node)[part] = parsed;
                break;
            }
            node = &(*node)[part];
            if (node->is_null()) *node = json::object();
            start = dot + 1;
        }
    }
    return j.dump();
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("<file>", "top level must be an object");
    ExperimentConfig c = reference_config();

    const json empty = json::object();
    const json& gas = j.contains("gas") ? j["gas"] : empty;
    read(gas, "a", "gas.a", c.gas.a);
    read(gas, "gamma", "gas.gamma", c.gas.gamma);
    read(gas, "alpha", "gas.alpha", c.gas.alpha);

    if (!j.contains("shock") || !j["shock"].is_object()) throw ConfigError("shock", "missing section");
    const json& sh = j["shock"];
    if (!sh.contains("v_plus")) throw ConfigError("shock.v_plus", "missing required field");
    if (!sh.contains("u_plus")) throw ConfigError("shock.u_plus", "missing required field");
    read(sh, "v_plus", "shock.v_plus", c.v_plus);
    read(sh, "u_plus", "shock.u_plus", c.u_plus);
    read(j, "beta1", "beta1", c.beta1);

    if (j.contains("perturbation")) {
        const json& p = j["perturbation"];
        read(p, "period", "perturbation.period", c.perturbation.period);
        read(p, "epsilon", "perturbation.epsilon", c.perturbation.epsilon);
        if (p.contains("zeta_modes")) c.perturbation.zeta_modes = read_modes(p["zeta_modes"], "perturbation.zeta_modes");
        if (p.contains("phi_modes")) c.perturbation.phi_modes = read_modes(p["phi_modes"], "perturbation.phi_modes");
    }
    if (j.contains("periodic")) {
        read(j["periodic"], "n_cells", "periodic.n_cells", c.n_cells);
        read(j["periodic"], "record_dt", "periodic.record_dt", c.record_dt);
    }
    if (j.contains("grid")) {
        read(j["grid"], "dx", "grid.dx", c.dx);
        read(j["grid"], "length", "grid.length", c.length);
        read(j["grid"], "cfl", "grid.cfl", c.cfl);
    }
    if (j.contains("time")) {
        read(j["time"], "t_end", "time.t_end", c.t_end);
        read(j["time"], "snapshots", "time.snapshots", c.snapshot_times);
        read(j["time"], "snapshot_dt", "time.snapshot_dt", c.snapshot_dt);
    }
    if (j.contains("mode")) {
        std::string m;
        read(j, "mode", "mode", m);
        if (m == "mirrored") c.mode = RunMode::mirrored;
        else if (m == "wall") c.mode = RunMode::wall;
        else throw ConfigError("mode", "must be \"mirrored\" or \"wall\"");
    }
    if (j.contains("bump")) {
        read(j["bump"], "amplitude", "bump.amplitude", c.bump.amplitude);
        read(j["bump"], "center", "bump.center", c.bump.center);
        read(j["bump"], "width", "bump.width", c.bump.width);
    }
    if (j.contains("profile")) {
        read(j["profile"], "tail_tol", "profile.tail_tol", c.profile.tail_tol);
        read(j["profile"], "max_span", "profile.max_span", c.profile.max_span);
        read(j["profile"], "step", "profile.step", c.profile.step);
        read(j["profile"], "rtol", "profile.rtol", c.profile.rtol);
    }
    if (j.contains("output")) {
        std::string dir;
        read(j["output"], "dir", "output.dir", dir);
        if (!dir.empty()) c.output_dir = dir;
    }
    if (j.contains("sweep")) {
        read(j["sweep"], "key", "sweep.key", c.sweep.key);
        read(j["sweep"], "values", "sweep.values", c.sweep.values);
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    return parse_config(apply_overrides(io::read_file(path), overrides));
}

std::string to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["gas"] = {{"a", c.gas.a}, {"gamma", c.gas.gamma}, {"alpha", c.gas.alpha}};
    j["shock"] = {{"v_plus", c.v_plus}, {"u_plus", c.u_plus}};
    j["beta1"] = c.beta1;
    j["perturbation"] = {{"period", c.perturbation.period},
                         {"epsilon", c.perturbation.epsilon},
                         {"zeta_modes", modes_to_json(c.perturbation.zeta_modes)},
                         {"phi_modes", modes_to_json(c.perturbation.phi_modes)}};
    j["periodic"] = {{"n_cells", c.n_cells}, {"record_dt", c.record_dt}};
    j["grid"] = {{"dx", c.dx}, {"length", c.length}, {"cfl", c.cfl}};
    j["time"] = {{"t_end", c.t_end}, {"snapshots", c.snapshot_times}, {"snapshot_dt", c.snapshot_dt}};
    j["mode"] = c.mode == RunMode::mirrored ? "mirrored" : "wall";
    j["bump"] = {{"amplitude", c.bump.amplitude}, {"center", c.bump.center}, {"width", c.bump.width}};
    j["profile"] = {{"tail_tol", c.profile.tail_tol}, {"max_span", c.profile.max_span},
                    {"step", c.profile.step}, {"rtol", c.profile.rtol}};
    j["output"] = {{"dir", c.output_dir.generic_string()}};
    j["sweep"] = {{"key", c.sweep.key}, {"values", c.sweep.values}};
    return j.dump(2) + "\n";
}

std::string config_reference_text() {
    return R"(Configuration keys (JSON file, dotted names usable with --override):
  gas.a                   pressure constant a in p = a v^-gamma        [1]
  gas.gamma               adiabatic exponent, >= 1                     [1.4]
  gas.alpha               viscosity exponent in mu = v^-alpha          [0]
  shock.v_plus            right state specific volume, > 0             (required)
  shock.u_plus            right state velocity, < 0                    (required)
  beta1                   initial distance of the shock from the wall  [15]
  perturbation.period     cell length of the periodic perturbation     [pi]
  perturbation.epsilon    amplitude multiplying the unit-scale modes   [0.01]
  perturbation.zeta_modes list of {k, cos, sin} for the volume part    [[{k:1,cos:1,sin:0}]]
  perturbation.phi_modes  list of {k, cos, sin} for the velocity part  [[{k:1,cos:0,sin:1}]]
  periodic.n_cells        cell resolution of the far-field runs        [256]
  periodic.record_dt      history spacing of far-field and shift runs  [0.1]
  grid.dx                 whole-line grid spacing (snapped to the cell) [0.02]
  grid.length             half-line length, 0 = automatic              [0]
  grid.cfl                time step safety factor                      [0.4]
  time.t_end              final time                                   [60]
  time.snapshots          explicit snapshot times, [] = uniform        [[]]
  time.snapshot_dt        uniform snapshot spacing                     [1]
  mode                    "mirrored" or "wall"                         ["mirrored"]
  bump.amplitude          optional localized bump added to v0          [0]
  bump.center             bump centre                                  [0]
  bump.width              bump width                                   [1]
  profile.tail_tol        profile tail tolerance relative to strength  [1e-10]
  profile.max_span        profile span cap, 0 = automatic              [0]
  profile.step            profile table spacing, 0 = automatic         [0]
  profile.rtol            profile integrator tolerance                 [1e-10]
  output.dir              output directory (--out takes precedence)    ["out"]
  sweep.key               dotted key varied by the sweep command       ["beta1"]
  sweep.values            values for the sweep                         [[5,10,15]]
)";
}

} // namespace vsw
