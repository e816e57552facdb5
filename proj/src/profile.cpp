#include "vsw/profile.hpp"

#include "vsw/errors.hpp"
#include "vsw/io.hpp"
#include "vsw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

namespace vsw {

namespace {

// h on either side of the profile, written in deviation variables.
double h_minus(const GasParams& g, const ShockData& d, double dev) {
    return -d.s * d.s * dev - pressure_increment(g, d.v_minus, dev);
}

double h_plus(const GasParams& g, const ShockData& d, double dev) {
    return d.s * d.s * dev - pressure_increment(g, d.v_plus, -dev);
}

double slope_from_devs(const GasParams& g, const ShockData& d, double dm, double dp, bool left) {
    const double V = left ? d.v_minus + dm : d.v_plus - dp;
    const double h = left ? h_minus(g, d, dm) : h_plus(g, d, dp);
    return std::pow(V, g.alpha + 1.0) * h / d.s;
}

// Dormand-Prince 5(4) for an autonomous scalar equation, advancing y over
// an interval of length H with adaptive substeps.
double dopri_interval(const std::function<double(double)>& f, double y, double H, double rtol,
                      double& hsub) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    double t = 0.0;
    int guard = 0;
    while (t < H) {
        if (++guard > 100000) throw NumericalError("profile integrator: step size collapsed");
        const double h = std::min(hsub, H - t);
        const double k1 = f(y);
        const double k2 = f(y + h * a21 * k1);
        const double k3 = f(y + h * (a31 * k1 + a32 * k2));
        const double k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = f(y5);
        const double err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double tol = rtol * std::max(std::abs(y), std::abs(y5)) + 1e-300;
        const double factor = err > 0.0 ? std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0) : 5.0;
        if (err <= tol) {
            y = y5;
            t += h;
            if (h == hsub || factor < 1.0) hsub = h * factor;
        } else {
            hsub = h * factor;
        }
    }
    return y;
}

// Integrates a decaying deviation from y0 on a uniform grid until it drops
// below stop or max_nodes is reached.
std::vector<double> integrate_branch(const std::function<double(double)>& rhs, double y0,
                                     double step, double stop, std::size_t max_nodes,
                                     double rtol, bool& truncated) {
    std::vector<double> out{y0};
    double hsub = step;
    truncated = false;
    while (out.back() >= stop) {
        if (out.size() > max_nodes) {
            truncated = true;
            break;
        }
        const double y = dopri_interval(rhs, out.back(), step, rtol, hsub);
        if (!(y > 0.0) || !std::isfinite(y)) throw NumericalError("profile integration left the admissible range");
        out.push_back(y);
    }
    return out;
}

double limited_hermite(double y0, double y1, double m0, double m1, double h, double t) {
    const double delta = (y1 - y0) / h;
    if (delta == 0.0) {
        m0 = 0.0;
        m1 = 0.0;
    } else {
        double a = m0 / delta;
        double b = m1 / delta;
        if (a < 0.0) a = 0.0;
        if (b < 0.0) b = 0.0;
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            a *= tau;
            b *= tau;
        }
        m0 = a * delta;
        m1 = b * delta;
    }
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
}

} // namespace

double h_rhs(const GasParams& g, const ShockData& shock, double V) {
    return -shock.s * shock.s * V - pressure(g, V) - shock.b;
}

double ProfileTable::xi(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(n_left_)) * step_;
}

double ProfileTable::node_V(std::size_t i) const {
    return i <= n_left_ ? shock_.v_minus + dev_minus_[i] : shock_.v_plus - dev_plus_[i];
}

double ProfileTable::interp(const std::vector<double>& y, double sign, double x, double below,
                            double above) const {
    const double pos = x / step_ + static_cast<double>(n_left_);
    if (pos <= 0.0) return pos == 0.0 ? y.front() : below;
    const double last = static_cast<double>(y.size() - 1);
    if (pos >= last) return pos == last ? y.back() : above;
    const auto i = static_cast<std::size_t>(pos);
    const double t = pos - static_cast<double>(i);
    return limited_hermite(y[i], y[i + 1], sign * slope_[i], sign * slope_[i + 1], step_, t);
}

double ProfileTable::dev_minus(double x) const {
    return interp(dev_minus_, 1.0, x, 0.0, shock_.theta);
}

double ProfileTable::dev_plus(double x) const {
    return interp(dev_plus_, -1.0, x, shock_.theta, 0.0);
}

double ProfileTable::V(double x) const {
    return x <= 0.0 ? shock_.v_minus + dev_minus(x) : shock_.v_plus - dev_plus(x);
}

double ProfileTable::U(double x) const {
    const double dm = x <= 0.0 ? dev_minus(x) : shock_.theta - dev_plus(x);
    return -shock_.s * dm;
}

double ProfileTable::dV(double x) const {
    if (x < xi_min() || x > xi_max()) return 0.0;
    if (x <= 0.0) return slope_from_devs(gas_, shock_, dev_minus(x), 0.0, true);
    return slope_from_devs(gas_, shock_, 0.0, dev_plus(x), false);
}

double ProfileTable::d2V(double x) const {
    if (x < xi_min() || x > xi_max()) return 0.0;
    const bool left = x <= 0.0;
    const double dm = left ? dev_minus(x) : 0.0;
    const double dp = left ? 0.0 : dev_plus(x);
    const double V = left ? shock_.v_minus + dm : shock_.v_plus - dp;
    const double h = left ? h_minus(gas_, shock_, dm) : h_plus(gas_, shock_, dp);
    const double a1 = gas_.alpha + 1.0;
    const double Vp = std::pow(V, a1) * h / shock_.s;
    const double hp = -shock_.s * shock_.s - dpressure(gas_, V);
    return (a1 * std::pow(V, gas_.alpha) * h + std::pow(V, a1) * hp) * Vp / shock_.s;
}

ProfileTable solve_profile(const GasParams& g, const ShockData& shock, const ProfileOptions& opts) {
    if (!(shock.v_minus > 0.0 && shock.v_minus < shock.v_plus) || !(shock.s > 0.0))
        throw InvalidShock("profile requires 0 < v_minus < v_plus and s > 0");
    if (!(opts.tail_tol > 0.0 && opts.tail_tol < 0.5)) throw ConfigError("profile.tail_tol", "must lie in (0, 0.5)");

    ProfileTable t;
    t.gas_ = g;
    t.shock_ = shock;
    t.tail_tol_ = opts.tail_tol;
    const double cmax = std::max(shock.c_minus, shock.c_plus);
    const double cmin = std::min(shock.c_minus, shock.c_plus);
    t.step_ = opts.step > 0.0 ? opts.step : std::min(0.005, 0.05 / cmax);
    const double span = opts.max_span > 0.0 ? opts.max_span : 200.0 / cmin;
    const auto max_nodes = static_cast<std::size_t>(std::ceil(span / t.step_));

    const double theta = shock.theta;
    const double stop = opts.tail_tol * theta;
    const double a1 = g.alpha + 1.0;

    // Left branch integrated in eta = -xi, right branch in xi; both decay.
    auto rhs_left = [&](double y) {
        const double V = shock.v_minus + y;
        return -std::pow(V, a1) * h_minus(g, shock, y) / shock.s;
    };
    auto rhs_right = [&](double w) {
        const double V = shock.v_plus - w;
        return -std::pow(V, a1) * h_plus(g, shock, w) / shock.s;
    };
    const auto left = integrate_branch(rhs_left, 0.5 * theta, t.step_, stop, max_nodes, opts.rtol,
                                       t.truncated_left_);
    const auto right = integrate_branch(rhs_right, 0.5 * theta, t.step_, stop, max_nodes,
                                        opts.rtol, t.truncated_right_);

    t.n_left_ = left.size() - 1;
    const std::size_t n = left.size() + right.size() - 1;
    t.dev_minus_.resize(n);
    t.dev_plus_.resize(n);
    t.slope_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool is_left = i <= t.n_left_;
        if (is_left) {
            t.dev_minus_[i] = left[t.n_left_ - i];
            t.dev_plus_[i] = theta - t.dev_minus_[i];
        } else {
            t.dev_plus_[i] = right[i - t.n_left_];
            t.dev_minus_[i] = theta - t.dev_plus_[i];
        }
        t.slope_[i] = slope_from_devs(g, shock, t.dev_minus_[i], t.dev_plus_[i], is_left);
    }
    return t;
}

TailFit fit_tail_rates(const ProfileTable& t) {
    const double theta = t.shock().theta;
    const double lo = t.tail_tol() * theta;
    const double hi = 10.0 * lo;
    std::vector<double> xl, yl, xr, yr;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double dm = t.node_dev_minus(i);
        const double dp = t.node_dev_plus(i);
        if (t.xi(i) < 0.0 && dm >= lo * 0.999 && dm <= hi) {
            xl.push_back(t.xi(i));
            yl.push_back(std::log(dm));
        }
        if (t.xi(i) > 0.0 && dp >= lo * 0.999 && dp <= hi) {
            xr.push_back(t.xi(i));
            yr.push_back(std::log(dp));
        }
    }
    if (xl.size() < 3 || xr.size() < 3) throw FitUnavailable("profile tails too short for a rate fit");
    const auto fl = num::least_squares(xl, yl);
    const auto fr = num::least_squares(xr, yr);
    TailFit out;
    out.rate_minus = fl.slope;
    out.rate_plus = -fr.slope;
    out.prefactor_minus = std::exp(fl.intercept) / theta;
    out.prefactor_plus = std::exp(fr.intercept) / theta;
    return out;
}

MirrorProfile mirror_profile(const ProfileTable& t) { return MirrorProfile(t); }

double Ramps::g2(double x) const { return t_->dev_minus(x) / t_->shock().theta; }
double Ramps::one_minus_g2(double x) const { return t_->dev_plus(x) / t_->shock().theta; }
double Ramps::g1(double x) const { return t_->dev_plus(-x) / t_->shock().theta; }
double Ramps::one_minus_g1(double x) const { return t_->dev_minus(-x) / t_->shock().theta; }
double Ramps::dg2(double x) const { return t_->dV(x) / t_->shock().theta; }
double Ramps::dg1(double x) const { return t_->dV(-x) / t_->shock().theta; }
double Ramps::d2g2(double x) const { return t_->d2V(x) / t_->shock().theta; }
double Ramps::d2g1(double x) const { return -t_->d2V(-x) / t_->shock().theta; }

Ramps ramps(const ProfileTable& t) { return Ramps(t); }

double CompositeWave::V(double x, double t) const {
    const double st = t_->shock().s * t + beta_;
    return t_->shock().v_minus + t_->dev_minus(-x - st) + t_->dev_minus(x - st);
}

double CompositeWave::U(double x, double t) const {
    const double st = t_->shock().s * t + beta_;
    return t_->shock().s * (t_->dev_minus(-x - st) - t_->dev_minus(x - st));
}

double CompositeWave::Vx(double x, double t) const {
    const double st = t_->shock().s * t + beta_;
    return t_->dV(x - st) - t_->dV(-x - st);
}

double CompositeWave::Ux(double x, double t) const { return Vt(x, t); }

double CompositeWave::Vt(double x, double t) const {
    const double st = t_->shock().s * t + beta_;
    return -t_->shock().s * (t_->dV(-x - st) + t_->dV(x - st));
}

CompositeWave composite(const ProfileTable& t, double beta) { return CompositeWave(t, beta); }

void write_profile_csv(std::ostream& os, const ProfileTable& t) {
    io::CsvWriter csv(os, {"xi", "V", "U", "g2", "g2prime"});
    const double theta = t.shock().theta;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double dm = t.node_dev_minus(i);
        csv.row({t.xi(i), t.node_V(i), -t.shock().s * dm, dm / theta, t.node_slope(i) / theta});
    }
}

} // namespace vsw
