#pragma once

/// @file experiment.hpp
/// @brief Pipelines behind the command line subcommands.

#include "vsw/ansatz.hpp"
#include "vsw/config.hpp"
#include "vsw/diagnostics.hpp"
#include "vsw/evolve.hpp"
#include "vsw/hugoniot.hpp"
#include "vsw/periodic.hpp"
#include "vsw/profile.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vsw {

ShockData shock_from_config(const ExperimentConfig& cfg);

/// Initial data, zero-mass shifts, shift equations with the two-pass Y0
/// calibration and the closed-form limits.
struct ShiftPipeline {
    HalfLineData data;
    X0Result x0;
    double X_inf = 0.0;
    YInfinity y_inf_first;  ///< Y_inf from the provisional Y0 = X0
    double Y0 = 0.0;        ///< calibrated
    double Y_inf = 0.0;     ///< after calibration
    double beta = 0.0;
    ShiftRun run;
    double sigma_left = 0.0;
    double sigma_right = 0.0;
    bool sigma_available = false;
};

/// The half-line length is cfg.length, or the automatic width for the
/// computed X0 when cfg.length is 0.
ShiftPipeline run_shift_pipeline(const ExperimentConfig& cfg, const ProfileTable& profile,
                                 const std::vector<double>& snapshot_times, double dt_scale = 1.0);

/// Everything monitored along an evolve run, one entry per snapshot.
struct SnapshotDiagnostics {
    DiagnosticsRow row;
    ConvergenceSample metric;
    double phi_end = 0.0;
    double psi_end = 0.0;
    double Phi_end = 0.0;
    double phix_inf = 0.0;
    double phix_l2 = 0.0;
    double phixx_l2 = 0.0;
    double min_f = 0.0;
    double max_prel_ratio = 0.0;
    double q_inf = 0.0;
    double perturbation_l2 = 0.0; ///< ||v_l - v_+|| + ||v_r - v_+|| over the field grid
    double shift_gap = 0.0;       ///< |X - beta|
};

struct EvolveResult {
    ShiftPipeline shift;
    RunResult run;
    std::vector<SnapshotDiagnostics> diag;
};

/// Diagnostics of one snapshot; the shift snapshot must share its time.
SnapshotDiagnostics diagnose(const Field& full, const ProfileTable& profile, const GasParams& g,
                             const ShiftSnapshot& shift, double beta);

EvolveResult run_evolve(const ExperimentConfig& cfg, const ProfileTable& profile,
                        bool audit = true);

/// Sources at t = 0 with the zero-mass shifts (no time stepping).
SourceEval initial_sources(const ExperimentConfig& cfg, const ProfileTable& profile);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Invariant suite for one configuration.
std::vector<Check> verify_config(const ExperimentConfig& cfg);

// Subcommands; each writes its outputs below out_dir and returns the exit code.
int cmd_hugoniot(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_profile(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_periodic(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_shift(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_evolve(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_verify(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

} // namespace vsw
