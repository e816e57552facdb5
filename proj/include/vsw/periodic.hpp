#pragma once

/// @file periodic.hpp
/// @brief Periodic background solutions on one cell and their decay to the mean.

#include "vsw/gas.hpp"
#include "vsw/hugoniot.hpp"

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <vector>

namespace vsw {

struct Mode {
    int k = 1;          ///< wavenumber index, kappa = 2 pi k / period
    double cos = 0.0;   ///< unit-scale cosine amplitude
    double sin = 0.0;   ///< unit-scale sine amplitude
};

/// zeta(x) = epsilon * sum(c cos(kappa x) + s sin(kappa x)) and likewise phi.
struct PerturbationSpec {
    double period = std::numbers::pi;
    double epsilon = 0.0;
    std::vector<Mode> zeta_modes;
    std::vector<Mode> phi_modes;

    void validate() const;
    double zeta(double x) const;
    double phi(double x) const;
    double zeta_dx(double x) const;
    double phi_dx(double x) const;
    /// Exact H^2 cell norms of zeta and phi.
    double zeta_h2() const;
    double phi_h2() const;
    bool is_zero() const;
};

enum class Side { left, right };

struct PeriodicState {
    GasParams gas;
    Side side = Side::right;
    double period = std::numbers::pi;
    std::vector<double> v;
    std::vector<double> u;
    double mean_v = 0.0; ///< invariant cell average
    double mean_u = 0.0;
    double t = 0.0;
    std::optional<double> sigma_fit;

    std::size_t n_cells() const { return v.size(); }
    double dx() const { return period / static_cast<double>(v.size()); }
    double x(std::size_t i) const { return dx() * static_cast<double>(i); }
    /// Nearest-node values at arbitrary x (the field grid is aligned to the cell).
    double v_at(double x) const;
    double u_at(double x) const;
};

/// Right: (v_+, u_+) + (zeta, phi)(x); left: (v_+, -u_+) + (zeta, -phi)(-x).
PeriodicState make_periodic_ics(const PerturbationSpec& spec, Side side, const ShockData& shock,
                                const GasParams& g, std::size_t n_cells = 256);

void step_periodic(PeriodicState& state, double dt);

struct PeriodicSample {
    double t = 0.0;
    double l2_dev = 0.0;
    double h1_dev = 0.0;
    double h2_dev = 0.0;
    double mean_v = 0.0;
    double mean_u = 0.0;
    double pressure_integral = 0.0; ///< int_cell p(v) dx
};

using PeriodicHistory = std::vector<PeriodicSample>;

/// Norms of (v,u) - (mean_v, mean_u) over the cell and the current means.
PeriodicSample sample_periodic(const PeriodicState& state);

double periodic_dt(const PeriodicState& state, double cfl = 0.4);

/// Advance to t_end, appending a sample every record_dt (and at both ends).
void evolve_periodic(PeriodicState& state, double t_end, PeriodicHistory* history = nullptr,
                     double record_dt = 0.1, double cfl = 0.4);

/// sigma = -slope/2 of log h2_dev against t over the decaying window.
double fit_decay(const PeriodicHistory& history);

void write_periodic_csv(std::ostream& os, const PeriodicHistory& history);

} // namespace vsw
