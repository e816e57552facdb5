#pragma once

/// @file profile.hpp
/// @brief Viscous 2-shock profile, its mirror image, the normalized ramps
/// and the composite two-shock wave.

#include "vsw/gas.hpp"
#include "vsw/hugoniot.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace vsw {

struct ProfileOptions {
    double tail_tol = 1e-10; ///< stop once |V - v_end| < tail_tol * theta
    double max_span = 0.0;   ///< 0 selects 200 / min(c_minus, c_plus)
    double step = 0.0;       ///< output spacing, 0 selects min(0.005, 0.05 / max c)
    double rtol = 1e-10;     ///< integrator relative tolerance
};

/// h(V) = -s^2 V - p(V) - b.
double h_rhs(const GasParams& g, const ShockData& shock, double V);

/// Sampled profile V(xi) of the 2-shock, anchored at V(0) = (v_- + v_+)/2.
/// Deviations from both end states are stored separately so that the tails
/// keep full relative precision.
class ProfileTable {
public:
    const GasParams& gas() const { return gas_; }
    const ShockData& shock() const { return shock_; }
    double step() const { return step_; }
    std::size_t size() const { return dev_minus_.size(); }
    double xi(std::size_t i) const;
    double xi_min() const { return xi(0); }
    double xi_max() const { return xi(size() - 1); }
    double anchor() const { return 0.5 * (shock_.v_minus + shock_.v_plus); }
    double tail_tol() const { return tail_tol_; }
    bool truncated_left() const { return truncated_left_; }
    bool truncated_right() const { return truncated_right_; }

    /// Sample values at node i.
    double node_V(std::size_t i) const;
    double node_dev_minus(std::size_t i) const { return dev_minus_[i]; }
    double node_dev_plus(std::size_t i) const { return dev_plus_[i]; }
    double node_slope(std::size_t i) const { return slope_[i]; }

    /// Interpolated profile; clamped to the end states beyond the table.
    double V(double xi) const;
    double U(double xi) const;
    /// V - v_minus and v_plus - V.
    double dev_minus(double xi) const;
    double dev_plus(double xi) const;
    /// V' and V'' from the ODE applied to the interpolated value.
    double dV(double xi) const;
    double d2V(double xi) const;
    double dU(double xi) const { return -shock_.s * dV(xi); }

private:
    friend ProfileTable solve_profile(const GasParams&, const ShockData&, const ProfileOptions&);

    double interp(const std::vector<double>& y, double sign, double xi, double below,
                  double above) const;
    double h_of(double xi, double V) const;

    GasParams gas_;
    ShockData shock_;
    double step_ = 0.0;
    std::size_t n_left_ = 0; ///< node index of xi = 0
    double tail_tol_ = 0.0;
    bool truncated_left_ = false;
    bool truncated_right_ = false;
    std::vector<double> dev_minus_;
    std::vector<double> dev_plus_;
    std::vector<double> slope_;
};

ProfileTable solve_profile(const GasParams& g, const ShockData& shock,
                           const ProfileOptions& opts = {});

/// Tail rates from a least-squares fit of log|V - v_end| over the last decade
/// of each tail. Prefactors are normalized by theta.
struct TailFit {
    double rate_minus = 0.0;
    double rate_plus = 0.0;
    double prefactor_minus = 0.0;
    double prefactor_plus = 0.0;
};
TailFit fit_tail_rates(const ProfileTable& table);

/// 1-shock obtained by reflection: V1(xi) = V2(-xi), U1(xi) = -U2(-xi).
class MirrorProfile {
public:
    explicit MirrorProfile(const ProfileTable& t) : t_(&t) {}
    double V(double xi) const { return t_->V(-xi); }
    double U(double xi) const { return -t_->U(-xi); }
    double dV(double xi) const { return -t_->dV(-xi); }
    double dU(double xi) const { return t_->dU(-xi); }

private:
    const ProfileTable* t_;
};

MirrorProfile mirror_profile(const ProfileTable& t);

/// g2 = (V2 - v_-)/theta and g1 = (V1 - v_+)/(v_- - v_+), both rising from 0 to 1.
class Ramps {
public:
    explicit Ramps(const ProfileTable& t) : t_(&t) {}
    double g1(double x) const;
    double g2(double x) const;
    double one_minus_g1(double x) const;
    double one_minus_g2(double x) const;
    double dg1(double x) const;
    double dg2(double x) const;
    double d2g1(double x) const;
    double d2g2(double x) const;

private:
    const ProfileTable* t_;
};

Ramps ramps(const ProfileTable& t);

/// V~(x,t) = V1(x+st+beta) + V2(x-st-beta) - v_-, U~ = U1 + U2.
class CompositeWave {
public:
    CompositeWave(const ProfileTable& t, double beta) : t_(&t), beta_(beta) {}
    double beta() const { return beta_; }
    const ProfileTable& profile() const { return *t_; }
    double V(double x, double t) const;
    double U(double x, double t) const;
    double Vx(double x, double t) const;
    double Ux(double x, double t) const;
    double Vt(double x, double t) const;

private:
    const ProfileTable* t_;
    double beta_;
};

CompositeWave composite(const ProfileTable& t, double beta);

/// Table nodes as CSV: xi,V,U,g2,g2prime.
void write_profile_csv(std::ostream& os, const ProfileTable& t);

} // namespace vsw
