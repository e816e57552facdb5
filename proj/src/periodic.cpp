#include "vsw/periodic.hpp"

#include "scheme.hpp"
#include "vsw/errors.hpp"
#include "vsw/io.hpp"
#include "vsw/numerics.hpp"
#include "vsw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace vsw {

namespace {

double modes_value(const std::vector<Mode>& modes, double period, double eps, double x) {
    double s = 0.0;
    for (const auto& m : modes) {
        const double kappa = 2.0 * std::numbers::pi * m.k / period;
        s += m.cos * std::cos(kappa * x) + m.sin * std::sin(kappa * x);
    }
    return eps * s;
}

double modes_dx(const std::vector<Mode>& modes, double period, double eps, double x) {
    double s = 0.0;
    for (const auto& m : modes) {
        const double kappa = 2.0 * std::numbers::pi * m.k / period;
        s += kappa * (-m.cos * std::sin(kappa * x) + m.sin * std::cos(kappa * x));
    }
    return eps * s;
}

double modes_h2(const std::vector<Mode>& modes, double period, double eps) {
    std::map<int, std::pair<double, double>> grouped;
    for (const auto& m : modes) {
        grouped[m.k].first += m.cos;
        grouped[m.k].second += m.sin;
    }
    double sum = 0.0;
    for (const auto& [k, cs] : grouped) {
        const double kappa = 2.0 * std::numbers::pi * k / period;
        const double k2 = kappa * kappa;
        sum += (cs.first * cs.first + cs.second * cs.second) * 0.5 * period * (1.0 + k2 + k2 * k2);
    }
    return eps * std::sqrt(sum);
}

// Periodic second-order differences for non power-of-two cells.
double periodic_fd_norm(const std::vector<double>& f, double dx, int order) {
    const std::size_t n = f.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jm = j == 0 ? n - 1 : j - 1;
        const std::size_t jp = j + 1 == n ? 0 : j + 1;
        const double d1 = (f[jp] - f[jm]) / (2.0 * dx);
        const double d2 = (f[jp] - 2.0 * f[j] + f[jm]) / (dx * dx);
        s0 += f[j] * f[j];
        s1 += d1 * d1;
        s2 += d2 * d2;
    }
    double total = s0;
    if (order >= 1) total += s1;
    if (order >= 2) total += s2;
    return total * dx;
}

double cell_norm_sq(const std::vector<double>& f, double period, int order) {
    if (spectral::is_power_of_two(f.size())) {
        const double n = spectral::sobolev_norm(f, period, order);
        return n * n;
    }
    return periodic_fd_norm(f, period / static_cast<double>(f.size()), order);
}

double mean_of(const std::vector<double>& f) {
    double s = 0.0;
    for (double x : f) s += x;
    return s / static_cast<double>(f.size());
}

} // namespace

void PerturbationSpec::validate() const {
    if (!(period > 0.0)) throw ConfigError("perturbation.period", "must be > 0");
    if (!(epsilon >= 0.0)) throw ConfigError("perturbation.epsilon", "must be >= 0");
    for (const auto& m : zeta_modes)
        if (m.k < 1) throw ConfigError("perturbation.zeta", "wavenumbers must be >= 1 (zero mean)");
    for (const auto& m : phi_modes)
        if (m.k < 1) throw ConfigError("perturbation.phi", "wavenumbers must be >= 1 (zero mean)");
}

double PerturbationSpec::zeta(double x) const { return modes_value(zeta_modes, period, epsilon, x); }
double PerturbationSpec::phi(double x) const { return modes_value(phi_modes, period, epsilon, x); }
double PerturbationSpec::zeta_dx(double x) const { return modes_dx(zeta_modes, period, epsilon, x); }
double PerturbationSpec::phi_dx(double x) const { return modes_dx(phi_modes, period, epsilon, x); }
double PerturbationSpec::zeta_h2() const { return modes_h2(zeta_modes, period, epsilon); }
double PerturbationSpec::phi_h2() const { return modes_h2(phi_modes, period, epsilon); }

bool PerturbationSpec::is_zero() const {
    if (epsilon == 0.0) return true;
    for (const auto& m : zeta_modes)
        if (m.cos != 0.0 || m.sin != 0.0) return false;
    for (const auto& m : phi_modes)
        if (m.cos != 0.0 || m.sin != 0.0) return false;
    return true;
}

double PeriodicState::v_at(double xx) const {
    const auto n = static_cast<long long>(v.size());
    long long i = std::llround(xx / dx()) % n;
    if (i < 0) i += n;
    return v[static_cast<std::size_t>(i)];
}

double PeriodicState::u_at(double xx) const {
    const auto n = static_cast<long long>(u.size());
    long long i = std::llround(xx / dx()) % n;
    if (i < 0) i += n;
    return u[static_cast<std::size_t>(i)];
}

PeriodicState make_periodic_ics(const PerturbationSpec& spec, Side side, const ShockData& shock,
                                const GasParams& g, std::size_t n_cells) {
    spec.validate();
    if (n_cells < 8) throw ConfigError("grid.n_cells", "need at least 8 nodes per period");
    PeriodicState st;
    st.gas = g;
    st.side = side;
    st.period = spec.period;
    st.v.resize(n_cells);
    st.u.resize(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        const double x = st.x(i);
        if (side == Side::right) {
            st.v[i] = shock.v_plus + spec.zeta(x);
            st.u[i] = shock.u_plus + spec.phi(x);
        } else {
            st.v[i] = shock.v_plus + spec.zeta(-x);
            st.u[i] = -shock.u_plus - spec.phi(-x);
        }
    }
    const double vmin = *std::min_element(st.v.begin(), st.v.end());
    if (vmin <= 0.1 * shock.v_plus)
        throw VacuumRisk("perturbation drives v below 0.1 v_plus (min " + std::to_string(vmin) + ")");
    st.mean_v = mean_of(st.v);
    st.mean_u = mean_of(st.u);
    return st;
}

void step_periodic(PeriodicState& state, double dt) {
    scheme::step_periodic(state.gas, state.dx(), dt, state.v, state.u, nullptr);
    state.t += dt;
}

PeriodicSample sample_periodic(const PeriodicState& st) {
    PeriodicSample s;
    s.t = st.t;
    std::vector<double> dv(st.v.size()), du(st.u.size());
    double pint = 0.0;
    for (std::size_t i = 0; i < st.v.size(); ++i) {
        dv[i] = st.v[i] - st.mean_v;
        du[i] = st.u[i] - st.mean_u;
        pint += detail::fast_pressure(st.gas, st.v[i]);
    }
    s.l2_dev = std::sqrt(cell_norm_sq(dv, st.period, 0) + cell_norm_sq(du, st.period, 0));
    s.h1_dev = std::sqrt(cell_norm_sq(dv, st.period, 1) + cell_norm_sq(du, st.period, 1));
    s.h2_dev = std::sqrt(cell_norm_sq(dv, st.period, 2) + cell_norm_sq(du, st.period, 2));
    s.mean_v = mean_of(st.v);
    s.mean_u = mean_of(st.u);
    s.pressure_integral = pint * st.dx();
    return s;
}

double periodic_dt(const PeriodicState& st, double cfl) {
    return scheme::stable_dt(st.gas, st.dx(), cfl, st.v);
}

void evolve_periodic(PeriodicState& st, double t_end, PeriodicHistory* history, double record_dt,
                     double cfl) {
    if (!(record_dt > 0.0)) throw ConfigError("record_dt", "must be > 0");
    const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
    if (history && (history->empty() || history->back().t < st.t)) history->push_back(sample_periodic(st));
    const double t0 = st.t;
    long long k = 1;
    double next = history ? t0 + record_dt : t_end;
    while (st.t < t_end - tiny) {
        const double stop = std::min(next, t_end);
        double dt = periodic_dt(st, cfl);
        if (st.t + dt > stop - tiny) dt = stop - st.t;
        step_periodic(st, dt);
        if (std::abs(st.t - stop) <= tiny) {
            st.t = stop;
            if (history) history->push_back(sample_periodic(st));
            if (stop == next) next = t0 + static_cast<double>(++k) * record_dt;
        }
    }
}

double fit_decay(const PeriodicHistory& h) {
    std::vector<double> t, y;
    for (const auto& s : h) {
        t.push_back(s.t);
        y.push_back(s.h2_dev);
    }
    if (h.empty()) throw FitUnavailable("decay fit: empty history");
    // Deviations at round-off level of the means carry no decay signal.
    const double scale = std::abs(h.front().mean_v) + std::abs(h.front().mean_u);
    double peak = 0.0;
    for (double x : y) peak = std::max(peak, x);
    if (!(peak > 1e-12 * scale)) throw FitUnavailable("decay fit: no perturbation to decay");
    // The late window is dominated by the slowest surviving mode; fitting
    // the last 45% keeps the early fast transient out of the estimate.
    const auto fit = num::fit_exponential_decay(t, y, 0.45);
    return 0.5 * fit.rate;
}

void write_periodic_csv(std::ostream& os, const PeriodicHistory& h) {
    io::CsvWriter csv(os, {"t", "l2_dev", "h1_dev", "h2_dev", "mean_v", "mean_u"});
    for (const auto& s : h) csv.row({s.t, s.l2_dev, s.h1_dev, s.h2_dev, s.mean_v, s.mean_u});
}

} // namespace vsw
