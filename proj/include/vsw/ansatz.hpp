#pragma once

/// @file ansatz.hpp
/// @brief Shifted composite ansatz with periodic far fields, its source
/// terms, the shift equations and their closed-form limits.

#include "vsw/evolve.hpp"
#include "vsw/gas.hpp"
#include "vsw/hugoniot.hpp"
#include "vsw/periodic.hpp"
#include "vsw/profile.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace vsw {

/// Periodic background with node values and spectral derivatives;
/// off-node evaluation uses trigonometric interpolation.
class PeriodicView {
public:
    explicit PeriodicView(const PeriodicState& st);
    double v(double x) const { return eval(v_, cv_, x, 0); }
    double u(double x) const { return eval(u_, cu_, x, 0); }
    double vx(double x) const { return eval(vx_, cv_, x, 1); }
    double ux(double x) const { return eval(ux_, cu_, x, 1); }
    double uxx(double x) const { return eval(uxx_, cu_, x, 2); }
    const PeriodicState& state() const { return *st_; }

private:
    double eval(const std::vector<double>& nodes, const std::vector<std::complex<double>>& c,
                double x, int order) const;
    const PeriodicState* st_;
    double dx_;
    std::vector<double> v_, u_, vx_, ux_, uxx_;
    std::vector<std::complex<double>> cv_, cu_;
};

/// V = v_l (1 - g1(x+st+X)) + v_- (g1 - g2(x-st-X)) + v_r g2,
/// U = u_l (1 - g1(x+st+Y)) + u_r g2(x-st-Y).
class AnsatzFields {
public:
    AnsatzFields(const ProfileTable& profile, const PeriodicView& left, const PeriodicView& right,
                 double X, double Y, double t);
    double V(double x) const;
    double U(double x) const;
    double Vx(double x) const;
    double Ux(double x) const;
    double X() const { return X_; }
    double Y() const { return Y_; }
    double t() const { return t_; }

private:
    const ProfileTable* p_;
    const PeriodicView* l_;
    const PeriodicView* r_;
    Ramps g_;
    double X_, Y_, t_;
};

/// Uniform evaluation grid x_j = x0 + j dx.
struct Grid {
    double x0 = 0.0;
    double dx = 0.0;
    std::size_t n = 0;
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
};

/// Source terms of the ansatz on a grid; cumulative integrals run from the
/// left grid edge.
struct SourceEval {
    Grid grid;
    std::vector<double> F11, f12, f13, F21, f22, f23;
    std::vector<double> F12, F13, F22, F23;
    std::vector<double> F1, F2; ///< assembled with the supplied Xp, Yp
    double Xp = 0.0;
    double Yp = 0.0;
};

SourceEval source_terms(const ProfileTable& profile, const PeriodicView& left,
                        const PeriodicView& right, double X, double Y, double Xp, double Yp,
                        double t, const Grid& grid);

struct ShiftRates {
    double Xp = 0.0;
    double Yp = 0.0;
    double F12 = 0.0; ///< limits x -> +infinity
    double F13 = 0.0;
    double F22 = 0.0;
    double F23 = 0.0;
    bool y_degenerate = false; ///< F22 and F23 both vanish; Yp set to 0
};

/// Quotients at the right grid edge. Throws DegenerateDenominator when a
/// denominator is below 1e-6 theta without a matching numerator.
ShiftRates shift_rates(const SourceEval& src, double theta);

/// Same limits evaluated spectrally: integrals of periodic functions
/// against g1', g2' over the whole line, using the Fourier transform of g2'.
class ShiftRateEvaluator {
public:
    ShiftRateEvaluator(const ProfileTable& profile, double period, std::size_t n_cells);
    ShiftRates rates(const PeriodicState& left, const PeriodicState& right, double t, double X,
                     double Y) const;

private:
    const ProfileTable* p_;
    double period_;
    std::size_t n_;
    std::vector<std::complex<double>> kernel_; ///< transform of g2' at kappa_k
};

struct AnsatzSample {
    double t = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double Xp = 0.0;
    double Yp = 0.0;
};

struct AnsatzState {
    double X = 0.0;
    double Y = 0.0;
    double X0 = 0.0;
    double Y0 = 0.0;
    double t = 0.0;
    std::vector<AnsatzSample> history;
    std::optional<double> X_inf;
    std::optional<double> Y_inf;
    double beta = 0.0;
    double beta1 = 0.0;
};

struct X0Result {
    double X0 = 0.0;
    double I1_at_root = 0.0;
    double M_tilde = 0.0;
    int iterations = 0;
    std::vector<double> omega;  ///< I1' sample points
    std::vector<double> slope;  ///< I1'(omega)
};

/// I1(omega) of the zero-mass condition on the half line.
double zero_mass_I1(const ProfileTable& profile, const HalfLineData& data, double omega);
double zero_mass_I1_slope(const ProfileTable& profile, const HalfLineData& data, double omega);

/// Root of I1; I1' sampled at X0 + {-2,-1,0,1,2}.
X0Result find_X0(const ProfileTable& profile, const HalfLineData& data);

/// I2(omega) = int (u~_0 - U(x,0)) over the mirrored grid.
double zero_mass_I2(const ProfileTable& profile, const PerturbationSpec& spec, const Field& f,
                    double omega);

struct ZeroMassY {
    std::vector<double> omega;
    std::vector<double> I2;
    double max_abs = 0.0;
    bool ok = false;
};

ZeroMassY zero_mass_Y(const ProfileTable& profile, const PerturbationSpec& spec, const Field& f,
                      const std::vector<double>& omegas = {-10.0, -1.0, 0.0, 1.0, 10.0},
                      double tol = 1e-10);

/// Closed-form limit of X in terms of the initial perturbation.
double x_infinity(double X0, const PerturbationSpec& spec, const ProfileTable& profile);

struct YInfinity {
    double Y_inf = 0.0;
    double truncation = 0.0; ///< last time integrand times the remaining horizon estimate
};

/// Closed-form limit of Y; the time integral uses the stored cell histories,
/// which must share sample times.
YInfinity y_infinity(double Y0, const PerturbationSpec& spec, const PeriodicHistory& left,
                     const PeriodicHistory& right, const GasParams& g, const ShockData& shock);

/// Y0 such that Y_inf = X_inf.
double calibrate_Y0(double Y0, double Y_inf, double X_inf);

struct ShiftRunOptions {
    double t_end = 0.0;
    double record_dt = 0.1;
    std::vector<double> snapshot_times;
    double cfl = 0.4;
    double dt_scale = 1.0;
};

struct ShiftSnapshot {
    double t = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double Xp = 0.0;
    double Yp = 0.0;
    PeriodicState left;
    PeriodicState right;
};

struct ShiftRun {
    AnsatzState state;
    PeriodicHistory left_history;
    PeriodicHistory right_history;
    std::vector<ShiftSnapshot> snapshots;
    PeriodicState left;
    PeriodicState right;
    bool y_degenerate = false;
};

/// RK4 on the shift equations over pairs of periodic steps; the midpoint
/// rates use the intermediate periodic state.
ShiftRun evolve_shifts(const AnsatzState& init, PeriodicState left, PeriodicState right,
                       const ShiftRateEvaluator& rates, const ShiftRunOptions& opts);

void write_shift_csv(std::ostream& os, const std::vector<AnsatzSample>& history);

} // namespace vsw
