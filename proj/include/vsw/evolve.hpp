#pragma once

/// @file evolve.hpp
/// @brief Whole-line evolution of the mirror-extended wall problem with
/// periodic far fields, plus a direct half-line wall solver.

#include "vsw/gas.hpp"
#include "vsw/hugoniot.hpp"
#include "vsw/periodic.hpp"
#include "vsw/profile.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace vsw {

struct Field {
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<double> v;
    std::vector<double> u;
    double t = 0.0;

    std::size_t n() const { return v.size(); }
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
};

/// Optional localized bump added to v0: amplitude * exp(-((x - center)/width)^2).
struct LocalBump {
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;
};

/// Initial data of the wall problem on [0, L].
struct HalfLineData {
    double dx = 0.0;
    std::vector<double> v0;
    std::vector<double> u0;
    double beta1 = 0.0;
    PerturbationSpec spec;

    std::size_t n() const { return v0.size(); }
    double x(std::size_t i) const { return dx * static_cast<double>(i); }
    double length() const { return dx * static_cast<double>(n() - 1); }
};

/// v0 = V~(x,0;beta1) + zeta(x) (+ bump), u0 = U~(x,0;beta1) + phi(x).
/// The grid has n = round(length/dx) + 1 nodes starting at x = 0.
HalfLineData make_half_line_data(const ProfileTable& profile, const PerturbationSpec& spec,
                                 double beta1, double dx, double length,
                                 const LocalBump& bump = {});

/// Even extension of v0, odd extension of u0 onto [-L, L].
Field mirror_extend(const HalfLineData& data);

/// Half width s t_end + max(X0, 0) + profile span + 10 periods.
double domain_half_width(const ProfileTable& profile, double X0, double t_end, double period);

/// Grid spacing commensurate with the period, closest to the request.
double aligned_dx(double requested, double period);

/// Advance the field by dt with edge values driven by the two periodic
/// backgrounds, which are advanced by the same dt. The field grid must be
/// aligned with the cell grid.
void step_field(Field& field, PeriodicState& far_left, PeriodicState& far_right, double dt);

/// Half-line variant: wall at node 0, right edge driven.
void step_wall_field(Field& field, PeriodicState& far_right, double dt);

enum class RunMode { mirrored, wall };

struct RunOptions {
    RunMode mode = RunMode::mirrored;
    double cfl = 0.4;
    std::vector<double> output_times;
    bool audit = false;               ///< per-step conservation audit (mirrored mode)
    double contamination_tol = 1e-6;  ///< edge contamination threshold
};

struct RunResult {
    std::vector<Field> snapshots;  ///< full computational field at each output time
    std::vector<Field> restricted; ///< x >= 0 part
    std::vector<double> wall_u;    ///< |u(0,t)| per snapshot
    std::vector<double> parity_v;  ///< max |v(-x) - v(x)| per snapshot (mirrored)
    std::vector<double> parity_u;  ///< max |u(-x) + u(x)| per snapshot (mirrored)
    double max_wall_u = 0.0;       ///< over every step
    double max_mass_audit = 0.0;   ///< relative per-step mismatch of interior mass vs boundary flux
    double max_momentum_audit = 0.0;
    std::size_t steps = 0;
    double dt_min = 0.0;
    double dt_max = 0.0;
    std::vector<std::pair<double, double>> dt_trace; ///< (t, dt), thinned
};

RunResult run(const HalfLineData& data, const GasParams& g, const ShockData& shock,
              double t_end, const RunOptions& opts);

/// Restriction of a mirrored field to x >= 0.
Field restrict_half(const Field& f);

void write_field_csv(std::ostream& os, const Field& f);

} // namespace vsw
