#pragma once

/// @file config.hpp
/// @brief Experiment configuration: JSON file plus dotted KEY=VAL overrides.

#include "vsw/gas.hpp"
#include "vsw/evolve.hpp"
#include "vsw/periodic.hpp"
#include "vsw/profile.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vsw {

struct SweepConfig {
    std::string key = "beta1";            ///< dotted config key to vary
    std::vector<double> values{5.0, 10.0, 15.0};
};

struct ExperimentConfig {
    GasParams gas = physical_gas();
    double v_plus = 2.0;
    double u_plus = 0.0;                  ///< required in files
    double beta1 = 15.0;
    PerturbationSpec perturbation;
    std::size_t n_cells = 256;            ///< periodic cell resolution for the shift equations
    double record_dt = 0.1;               ///< history spacing of periodic and shift runs
    double dx = 0.02;
    double length = 0.0;                  ///< half-line length; 0 selects the automatic width
    double t_end = 60.0;
    std::vector<double> snapshot_times;   ///< empty selects every snapshot_dt
    double snapshot_dt = 1.0;
    RunMode mode = RunMode::mirrored;
    double cfl = 0.4;
    LocalBump bump;
    ProfileOptions profile;
    std::filesystem::path output_dir = "out";
    SweepConfig sweep;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    /// Snapshot times actually used (explicit list or a uniform grid including 0 and t_end).
    std::vector<double> output_times() const;
};

/// Defaults for the reference run (gamma = 1.4, v_+ = 2, v_- = 1, beta1 = 15).
ExperimentConfig reference_config();

/// Apply "a.b.c=value" overrides; value is parsed as JSON, else taken as a string.
std::string apply_overrides(const std::string& json_text, const std::vector<std::string>& overrides);

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides = {});
std::string to_json(const ExperimentConfig& cfg);

/// Text for --help: every key with its default.
std::string config_reference_text();

} // namespace vsw
