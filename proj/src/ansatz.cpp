#include "vsw/ansatz.hpp"

#include "scheme.hpp"
#include "vsw/errors.hpp"
#include "vsw/io.hpp"
#include "vsw/numerics.hpp"
#include "vsw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace vsw {

namespace {

using cplx = std::complex<double>;

double kappa(std::size_t k, double period) {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / period;
}

double mode_weight(std::size_t k, std::size_t n) {
    if (k == 0) return 1.0;
    if (n % 2 == 0 && k == n / 2) return 1.0;
    return 2.0;
}

} // namespace

// ---------------------------------------------------------------------------
// PeriodicView

PeriodicView::PeriodicView(const PeriodicState& st)
    : st_(&st), dx_(st.dx()), v_(st.v), u_(st.u) {
    vx_ = spectral::derivative(st.v, st.period, 1);
    ux_ = spectral::derivative(st.u, st.period, 1);
    uxx_ = spectral::derivative(st.u, st.period, 2);
    cv_ = spectral::forward(st.v);
    cu_ = spectral::forward(st.u);
}

double PeriodicView::eval(const std::vector<double>& nodes, const std::vector<cplx>& c, double x,
                          int order) const {
    const std::size_t n = nodes.size();
    const double pos = x / dx_;
    const double r = std::round(pos);
    if (std::abs(pos - r) < 1e-9) {
        const auto nn = static_cast<long long>(n);
        long long i = static_cast<long long>(r) % nn;
        if (i < 0) i += nn;
        return nodes[static_cast<std::size_t>(i)];
    }
    // exp(i kappa_k x) by recurrence from the first harmonic.
    const cplx step = std::exp(cplx(0.0, kappa(1, st_->period) * x));
    cplx phase(1.0, 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k, phase *= step) {
        const bool nyquist = n % 2 == 0 && k == n / 2;
        if (nyquist && order % 2 == 1) continue;
        const double kap = kappa(k, st_->period);
        cplx factor = phase;
        for (int o = 0; o < order; ++o) factor *= cplx(0.0, kap);
        sum += mode_weight(k, n) * (c[k] * factor).real();
    }
    return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// AnsatzFields

AnsatzFields::AnsatzFields(const ProfileTable& profile, const PeriodicView& left,
                           const PeriodicView& right, double X, double Y, double t)
    : p_(&profile), l_(&left), r_(&right), g_(profile), X_(X), Y_(Y), t_(t) {}

double AnsatzFields::V(double x) const {
    const double st = p_->shock().s * t_;
    const double a1 = x + st + X_;
    const double a2 = x - st - X_;
    return l_->v(x) * g_.one_minus_g1(a1) + p_->shock().v_minus * (g_.g1(a1) - g_.g2(a2)) +
           r_->v(x) * g_.g2(a2);
}

double AnsatzFields::U(double x) const {
    const double st = p_->shock().s * t_;
    return l_->u(x) * g_.one_minus_g1(x + st + Y_) + r_->u(x) * g_.g2(x - st - Y_);
}

double AnsatzFields::Vx(double x) const {
    const double st = p_->shock().s * t_;
    const double a1 = x + st + X_;
    const double a2 = x - st - X_;
    return l_->vx(x) * g_.one_minus_g1(a1) - l_->v(x) * g_.dg1(a1) +
           p_->shock().v_minus * (g_.dg1(a1) - g_.dg2(a2)) + r_->vx(x) * g_.g2(a2) +
           r_->v(x) * g_.dg2(a2);
}

double AnsatzFields::Ux(double x) const {
    const double st = p_->shock().s * t_;
    const double b1 = x + st + Y_;
    const double b2 = x - st - Y_;
    return l_->ux(x) * g_.one_minus_g1(b1) - l_->u(x) * g_.dg1(b1) + r_->ux(x) * g_.g2(b2) +
           r_->u(x) * g_.dg2(b2);
}

// ---------------------------------------------------------------------------
// Source terms

SourceEval source_terms(const ProfileTable& profile, const PeriodicView& left,
                        const PeriodicView& right, double X, double Y, double Xp, double Yp,
                        double t, const Grid& grid) {
    const auto& sh = profile.shock();
    const auto& g = profile.gas();
    const Ramps r(profile);
    const AnsatzFields fields(profile, left, right, X, Y, t);
    const double s = sh.s;
    const double st = s * t;
    const double a1p = g.alpha + 1.0;

    SourceEval e;
    e.grid = grid;
    e.Xp = Xp;
    e.Yp = Yp;
    const std::size_t n = grid.n;
    for (auto* arr : {&e.F11, &e.f12, &e.f13, &e.F21, &e.f22, &e.f23}) arr->resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.x(j);
        const double a1 = x + st + X, a2 = x - st - X;
        const double b1 = x + st + Y, b2 = x - st - Y;
        const double vl = left.v(x), ul = left.u(x), ulx = left.ux(x);
        const double vr = right.v(x), ur = right.u(x), urx = right.ux(x);
        const double sig_l = ulx / std::pow(vl, a1p);
        const double sig_r = urx / std::pow(vr, a1p);

        e.F11[j] = ul * (r.g1(b1) - r.g1(a1)) - ur * (r.g2(b2) - r.g2(a2));
        e.f12[j] = (-s * (vl - sh.v_plus) + (ul + sh.u_plus)) * r.dg1(a1) -
                   (s * (vr - sh.v_plus) + (ur - sh.u_plus)) * r.dg2(a2);
        e.f13[j] = (sh.v_minus - vl) * r.dg1(a1) + (sh.v_minus - vr) * r.dg2(a2);

        const double V = fields.V(x);
        const double Ux = fields.Ux(x);
        const double w1 = r.one_minus_g1(b1);
        const double w2 = r.g2(b2);
        e.F21[j] = pressure(g, V) - pressure(g, vl) * w1 - pressure(g, vr) * w2 -
                   (Ux / std::pow(V, a1p) - sig_l * w1 - sig_r * w2);
        e.f22[j] = (-s * ul - pressure(g, vl) + sig_l) * r.dg1(b1) -
                   (s * ur - pressure(g, vr) + sig_r) * r.dg2(b2);
        e.f23[j] = -ul * r.dg1(b1) - ur * r.dg2(b2);
    }
    e.F12 = num::cumulative_left_corrected(e.f12, grid.dx);
    e.F13 = num::cumulative_left_corrected(e.f13, grid.dx);
    e.F22 = num::cumulative_left_corrected(e.f22, grid.dx);
    e.F23 = num::cumulative_left_corrected(e.f23, grid.dx);
    e.F1.resize(n);
    e.F2.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        e.F1[j] = -e.F11[j] - e.F12[j] - Xp * e.F13[j];
        e.F2[j] = -e.F21[j] - e.F22[j] - Yp * e.F23[j];
    }
    return e;
}

namespace {

ShiftRates rates_from_limits(double F12, double F13, double F22, double F23, double theta) {
    const double floor = 1e-6 * theta;
    ShiftRates r;
    r.F12 = F12;
    r.F13 = F13;
    r.F22 = F22;
    r.F23 = F23;
    if (!(std::abs(F13) >= floor))
        throw DegenerateDenominator("mass-shift denominator vanished: |F13| = " + io::format_double(std::abs(F13)));
    r.Xp = -F12 / F13;
    if (std::abs(F23) < floor) {
        if (std::abs(F22) >= floor)
            throw DegenerateDenominator("momentum-shift denominator vanished with nonzero numerator F22 = " +
                                        io::format_double(F22));
        r.Yp = 0.0;
        r.y_degenerate = true;
    } else {
        r.Yp = -F22 / F23;
    }
    return r;
}

} // namespace

ShiftRates shift_rates(const SourceEval& src, double theta) {
    if (src.grid.n == 0) throw ValidationError("empty source evaluation");
    const std::size_t e = src.grid.n - 1;
    return rates_from_limits(src.F12[e], src.F13[e], src.F22[e], src.F23[e], theta);
}

// ---------------------------------------------------------------------------
// Spectral shift rates

ShiftRateEvaluator::ShiftRateEvaluator(const ProfileTable& profile, double period,
                                       std::size_t n_cells)
    : p_(&profile), period_(period), n_(n_cells) {
    const double theta = profile.shock().theta;
    const double h = profile.step();
    kernel_.assign(n_ / 2 + 1, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < kernel_.size(); ++k) {
        const double kap = kappa(k, period_);
        cplx sum(0.0, 0.0);
        for (std::size_t i = 0; i < profile.size(); ++i) {
            const double w = (i == 0 || i + 1 == profile.size()) ? 0.5 : 1.0;
            sum += w * profile.node_slope(i) / theta * std::exp(cplx(0.0, -kap * profile.xi(i)));
        }
        kernel_[k] = sum * h;
    }
}

ShiftRates ShiftRateEvaluator::rates(const PeriodicState& left, const PeriodicState& right,
                                     double t, double X, double Y) const {
    if (left.n_cells() != n_ || right.n_cells() != n_)
        throw ValidationError("shift-rate evaluator built for a different cell size");
    const auto& sh = p_->shock();
    const auto& g = p_->gas();
    const double s = sh.s;
    const double a1p = g.alpha + 1.0;
    const std::size_t n = n_;

    const auto ulx = spectral::derivative(left.u, period_, 1);
    const auto urx = spectral::derivative(right.u, period_, 1);
    std::vector<double> Al(n), Ar(n), Bl(n), Br(n), Cl(n), Cr(n), Dl(n), Dr(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double vl = left.v[j], ul = left.u[j];
        const double vr = right.v[j], ur = right.u[j];
        Al[j] = -s * (vl - sh.v_plus) + (ul + sh.u_plus);
        Ar[j] = s * (vr - sh.v_plus) + (ur - sh.u_plus);
        Bl[j] = sh.v_minus - vl;
        Br[j] = sh.v_minus - vr;
        Cl[j] = -s * ul - detail::fast_pressure(g, vl) + ulx[j] / std::pow(vl, a1p);
        Cr[j] = s * ur - detail::fast_pressure(g, vr) + urx[j] / std::pow(vr, a1p);
        Dl[j] = -ul;
        Dr[j] = -ur;
    }
    // int f(x) g2'(x - a) dx and int f(x) g1'(x + b) dx for trigonometric f.
    auto conv2 = [&](const std::vector<double>& f, double a) {
        const auto c = spectral::forward(f);
        double sum = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
            sum += mode_weight(k, n) * (c[k] * std::exp(cplx(0.0, kappa(k, period_) * a)) * std::conj(kernel_[k])).real();
        return sum / static_cast<double>(n);
    };
    auto conv1 = [&](const std::vector<double>& f, double b) {
        const auto c = spectral::forward(f);
        double sum = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
            sum += mode_weight(k, n) * (c[k] * std::exp(cplx(0.0, -kappa(k, period_) * b)) * kernel_[k]).real();
        return sum / static_cast<double>(n);
    };
    const double aX = s * t + X;
    const double aY = s * t + Y;
    const double F12 = conv1(Al, aX) - conv2(Ar, aX);
    const double F13 = conv1(Bl, aX) + conv2(Br, aX);
    const double F22 = conv1(Cl, aY) - conv2(Cr, aY);
    const double F23 = conv1(Dl, aY) + conv2(Dr, aY);
    return rates_from_limits(F12, F13, F22, F23, sh.theta);
}

// ---------------------------------------------------------------------------
// Zero-mass conditions

namespace {

double left_tail_integral(const ProfileTable& p, double omega) {
    // int_0^inf dev_minus(-x - omega) dx; the integrand vanishes beyond the table.
    const double upper = -omega - p.xi_min();
    if (upper <= 0.0) return 0.0;
    auto f = [&](double x) { return p.dev_minus(-x - omega); };
    return num::adaptive_simpson(f, 0.0, upper, 1e-15);
}

} // namespace

double zero_mass_I1(const ProfileTable& p, const HalfLineData& d, double omega) {
    const Ramps r(p);
    const auto& spec = d.spec;
    std::vector<double> f(d.n());
    for (std::size_t i = 0; i < d.n(); ++i) {
        const double x = d.x(i);
        const double q = spec.zeta(-x) * r.one_minus_g1(x + omega) + spec.zeta(x) * r.g2(x - omega);
        f[i] = d.v0[i] - q - p.V(x - omega);
    }
    return 2.0 * num::trapezoid(f, d.dx) - 2.0 * left_tail_integral(p, omega);
}

double zero_mass_I1_slope(const ProfileTable& p, const HalfLineData& d, double omega) {
    const Ramps r(p);
    const auto& spec = d.spec;
    const double theta = p.shock().theta;
    std::vector<double> f(d.n());
    for (std::size_t i = 0; i < d.n(); ++i) {
        const double x = d.x(i);
        f[i] = spec.zeta(-x) * r.dg1(x + omega) + (spec.zeta(x) + theta) * r.dg2(x - omega);
    }
    return 2.0 * num::trapezoid(f, d.dx) + 2.0 * p.dev_minus(-omega);
}

X0Result find_X0(const ProfileTable& p, const HalfLineData& d) {
    X0Result res;
    auto I1 = [&](double w) { return zero_mass_I1(p, d, w); };
    double lo = d.beta1, hi = d.beta1;
    double flo = I1(lo), fhi = flo;
    double step = 1.0;
    int guard = 0;
    while (flo > 0.0) {
        if (++guard > 60) throw AssumptionViolation("I1 has no sign change below beta1");
        hi = lo;
        fhi = flo;
        lo -= step;
        step *= 2.0;
        flo = I1(lo);
    }
    while (fhi < 0.0) {
        if (++guard > 60) throw AssumptionViolation("I1 has no sign change above beta1");
        lo = hi;
        flo = fhi;
        hi += step;
        step *= 2.0;
        fhi = I1(hi);
    }
    double w = flo == 0.0 ? lo : (fhi == 0.0 ? hi : lo - flo * (hi - lo) / (fhi - flo));
    double fw = I1(w);
    for (res.iterations = 0; res.iterations < 100; ++res.iterations) {
        if (std::abs(fw) < 1e-13 || hi - lo < 1e-14) break;
        if (fw < 0.0) {
            lo = w;
            flo = fw;
        } else {
            hi = w;
            fhi = fw;
        }
        const double d1 = zero_mass_I1_slope(p, d, w);
        double next = d1 > 0.0 ? w - fw / d1 : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        w = next;
        fw = I1(w);
    }
    res.X0 = w;
    res.I1_at_root = fw;
    res.M_tilde = I1(d.beta1) / (2.0 * (p.shock().v_minus - p.shock().v_plus));
    for (int k = -2; k <= 2; ++k) {
        const double om = w + k;
        const double sl = zero_mass_I1_slope(p, d, om);
        res.omega.push_back(om);
        res.slope.push_back(sl);
        if (!(sl > 0.0))
            throw AssumptionViolation("I1 is not increasing at omega = " + io::format_double(om) +
                                      "; the perturbation is too large");
    }
    return res;
}

double zero_mass_I2(const ProfileTable& p, const PerturbationSpec& spec, const Field& f,
                    double omega) {
    const Ramps r(p);
    const auto& sh = p.shock();
    auto integrand = [&](std::size_t i) {
        const double x = f.x(i);
        const double ul = -sh.u_plus - spec.phi(-x);
        const double ur = sh.u_plus + spec.phi(x);
        const double U = ul * r.one_minus_g1(x + omega) + ur * r.g2(x - omega);
        return f.u[i] - U;
    };
    // Pair nodes symmetric about the centre so that odd integrands cancel.
    const std::size_t n = f.n();
    double sum = 0.0;
    for (std::size_t i = 0, j = n - 1; i < j; ++i, --j) {
        const double w = (i == 0) ? 0.5 : 1.0;
        sum += w * (integrand(i) + integrand(j));
    }
    if (n % 2 == 1) sum += integrand(n / 2);
    return sum * f.dx;
}

ZeroMassY zero_mass_Y(const ProfileTable& p, const PerturbationSpec& spec, const Field& f,
                      const std::vector<double>& omegas, double tol) {
    ZeroMassY z;
    z.omega = omegas;
    for (double w : omegas) {
        const double v = zero_mass_I2(p, spec, f, w);
        z.I2.push_back(v);
        z.max_abs = std::max(z.max_abs, std::abs(v));
    }
    z.ok = z.max_abs < tol;
    return z;
}

// ---------------------------------------------------------------------------
// Asymptotic shifts

double x_infinity(double X0, const PerturbationSpec& spec, const ProfileTable& p) {
    if (spec.is_zero()) return X0;
    const double theta = p.shock().theta;
    const double tol = 1e-14;
    // The ramp weights vanish beyond the table, where the integrands are
    // below tail_tol * epsilon.
    double right = 0.0;
    const double upper_r = X0 + p.xi_max();
    if (upper_r > 0.0) {
        right = num::adaptive_simpson(
            [&](double x) { return spec.zeta(x) * p.dev_plus(x - X0) / theta; }, 0.0, upper_r, tol);
    }
    double left = 0.0;
    const double upper_l = -X0 - p.xi_min();
    if (upper_l > 0.0) {
        left = num::adaptive_simpson(
            [&](double x) { return spec.zeta(-x) * p.dev_minus(-x - X0) / theta; }, 0.0, upper_l, tol);
    }
    const double P = spec.period;
    const double cell = num::adaptive_simpson([&](double y) { return (P - y) * spec.zeta(y); }, 0.0, P, tol) / P;
    return X0 + (right - left - cell) / theta;
}

YInfinity y_infinity(double Y0, const PerturbationSpec& spec, const PeriodicHistory& left,
                     const PeriodicHistory& right, const GasParams& g, const ShockData& shock) {
    YInfinity out;
    if (spec.is_zero()) {
        out.Y_inf = Y0;
        return out;
    }
    if (left.size() != right.size()) throw ValidationError("periodic histories differ in length");
    const double P = spec.period;
    const double tol = 1e-14;
    const double dphi = num::adaptive_simpson(
        [&](double y) { return (P - y) * (spec.phi(y) + spec.phi(-y)); }, 0.0, P, tol);
    double T = 0.0;
    for (std::size_t i = 1; i < left.size(); ++i) {
        if (std::abs(left[i].t - right[i].t) > 1e-9) throw ValidationError("periodic histories are not aligned in time");
        const double f0 = left[i - 1].pressure_integral - right[i - 1].pressure_integral;
        const double f1 = left[i].pressure_integral - right[i].pressure_integral;
        T += 0.5 * (left[i].t - left[i - 1].t) * (f0 + f1);
    }
    if (left.size() >= 2) {
        const std::size_t n = left.size();
        const double fl = std::abs(left[n - 1].pressure_integral - right[n - 1].pressure_integral);
        const double fp = std::abs(left[n - 2].pressure_integral - right[n - 2].pressure_integral);
        const double dt = left[n - 1].t - left[n - 2].t;
        out.truncation = (fp > 0.0 && fl < fp) ? fl * dt * (fl / fp) / (1.0 - fl / fp)
                                               : fl * (left[n - 1].t - left[0].t);
    }
    const double gd = num::adaptive_simpson(
        [&](double x) {
            return g_anti(g, shock.v_plus + spec.zeta(-x)) - g_anti(g, shock.v_plus + spec.zeta(x));
        },
        0.0, P, tol);
    out.Y_inf = Y0 + (dphi - T + gd) / (2.0 * shock.u_plus * P);
    out.truncation /= std::abs(2.0 * shock.u_plus * P);
    return out;
}

double calibrate_Y0(double Y0, double Y_inf, double X_inf) { return X_inf - (Y_inf - Y0); }

// ---------------------------------------------------------------------------
// Shift evolution

ShiftRun evolve_shifts(const AnsatzState& init, PeriodicState left, PeriodicState right,
                       const ShiftRateEvaluator& ev, const ShiftRunOptions& opts) {
    if (!(opts.t_end >= 0.0)) throw ConfigError("time.t_end", "must be >= 0");
    if (!(opts.record_dt > 0.0)) throw ConfigError("time.record_dt", "must be > 0");
    ShiftRun run;
    run.state = init;
    auto& st = run.state;
    st.t = left.t;
    const double tiny = 1e-12 * std::max(1.0, opts.t_end);

    std::vector<double> snaps = opts.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    long long rec_k = 0;

    auto record = [&](const ShiftRates& r) {
        st.history.push_back({st.t, st.X, st.Y, r.Xp, r.Yp});
        run.left_history.push_back(sample_periodic(left));
        run.right_history.push_back(sample_periodic(right));
        run.left_history.back().t = st.t;
        run.right_history.back().t = st.t;
    };
    auto take_snapshots = [&](const ShiftRates& r) {
        while (next_snap < snaps.size() && std::abs(snaps[next_snap] - st.t) <= tiny) {
            run.snapshots.push_back({st.t, st.X, st.Y, r.Xp, r.Yp, left, right});
            ++next_snap;
        }
    };

    ShiftRates r0 = ev.rates(left, right, st.t, st.X, st.Y);
    run.y_degenerate = r0.y_degenerate;
    record(r0);
    take_snapshots(r0);
    ++rec_k;
    while (st.t < opts.t_end - tiny) {
        double stop = std::min(opts.t_end, static_cast<double>(rec_k) * opts.record_dt);
        if (next_snap < snaps.size()) stop = std::min(stop, snaps[next_snap]);
        double dt = std::min(periodic_dt(left, opts.cfl), periodic_dt(right, opts.cfl)) * opts.dt_scale;
        if (st.t + 2.0 * dt > stop - tiny) dt = 0.5 * (stop - st.t);

        const ShiftRates k1 = ev.rates(left, right, st.t, st.X, st.Y);
        step_periodic(left, dt);
        step_periodic(right, dt);
        const double tm = st.t + dt;
        const ShiftRates k2 = ev.rates(left, right, tm, st.X + dt * k1.Xp, st.Y + dt * k1.Yp);
        const ShiftRates k3 = ev.rates(left, right, tm, st.X + dt * k2.Xp, st.Y + dt * k2.Yp);
        step_periodic(left, dt);
        step_periodic(right, dt);
        const double H = 2.0 * dt;
        const ShiftRates k4 = ev.rates(left, right, st.t + H, st.X + H * k3.Xp, st.Y + H * k3.Yp);
        st.X += H / 6.0 * (k1.Xp + 2.0 * k2.Xp + 2.0 * k3.Xp + k4.Xp);
        st.Y += H / 6.0 * (k1.Yp + 2.0 * k2.Yp + 2.0 * k3.Yp + k4.Yp);
        st.t += H;
        run.y_degenerate = run.y_degenerate || k1.y_degenerate || k2.y_degenerate ||
                           k3.y_degenerate || k4.y_degenerate;

        if (std::abs(st.t - stop) <= tiny) {
            st.t = stop;
            left.t = stop;
            right.t = stop;
            const ShiftRates r = ev.rates(left, right, st.t, st.X, st.Y);
            if (std::abs(stop - static_cast<double>(rec_k) * opts.record_dt) <= tiny ||
                std::abs(stop - opts.t_end) <= tiny) {
                record(r);
                if (std::abs(stop - static_cast<double>(rec_k) * opts.record_dt) <= tiny) ++rec_k;
            }
            take_snapshots(r);
        }
    }
    run.left = std::move(left);
    run.right = std::move(right);
    return run;
}

void write_shift_csv(std::ostream& os, const std::vector<AnsatzSample>& history) {
    io::CsvWriter csv(os, {"t", "X", "Y", "Xp", "Yp"});
    for (const auto& h : history) csv.row({h.t, h.X, h.Y, h.Xp, h.Yp});
}

} // namespace vsw
