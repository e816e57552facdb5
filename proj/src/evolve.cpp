#include "vsw/evolve.hpp"

#include "scheme.hpp"
#include "vsw/errors.hpp"
#include "vsw/io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace vsw {

namespace {

std::size_t cell_index(double x, double dx, std::size_t m) {
    const auto n = static_cast<long long>(m);
    long long i = std::llround(x / dx) % n;
    if (i < 0) i += n;
    return static_cast<std::size_t>(i);
}

void require_aligned(const Field& f, const PeriodicState& p) {
    if (std::abs(f.dx - p.dx()) > 1e-12 * p.dx())
        throw ValidationError("field spacing must equal the periodic cell spacing");
    const double r = f.x0 / f.dx;
    if (std::abs(r - std::round(r)) > 1e-6) throw ValidationError("field origin must be a grid multiple");
}

std::size_t steps_per_period(double dx, double period) {
    const double m = period / dx;
    const auto mi = static_cast<std::size_t>(std::llround(m));
    if (mi < 8 || std::abs(m - static_cast<double>(mi)) > 1e-9 * m)
        throw ConfigError("grid.dx", "must divide the period into at least 8 equal cells");
    return mi;
}

double max_step(const GasParams& g, double cfl, const Field& f, const PeriodicState* l,
                const PeriodicState& r) {
    double dt = scheme::stable_dt(g, f.dx, cfl, f.v);
    dt = std::min(dt, periodic_dt(r, cfl));
    if (l) dt = std::min(dt, periodic_dt(*l, cfl));
    return dt;
}

double interior_sum(const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t j = 1; j + 1 < a.size(); ++j) s += a[j];
    return s;
}

} // namespace

double aligned_dx(double requested, double period) {
    if (!(requested > 0.0)) throw ConfigError("grid.dx", "must be > 0");
    const double m = std::max(8.0, std::round(period / requested));
    return period / m;
}

HalfLineData make_half_line_data(const ProfileTable& profile, const PerturbationSpec& spec,
                                 double beta1, double dx, double length, const LocalBump& bump) {
    spec.validate();
    if (!(beta1 > 0.0)) throw ConfigError("beta1", "must be > 0");
    if (!(dx > 0.0) || !(length > dx)) throw ConfigError("grid", "need 0 < dx < length");
    const auto n = static_cast<std::size_t>(std::llround(length / dx)) + 1;
    HalfLineData d;
    d.dx = dx;
    d.beta1 = beta1;
    d.spec = spec;
    d.v0.resize(n);
    d.u0.resize(n);
    const CompositeWave wave(profile, beta1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = d.x(i);
        double v = wave.V(x, 0.0) + spec.zeta(x);
        if (bump.amplitude != 0.0) {
            const double z = (x - bump.center) / bump.width;
            v += bump.amplitude * std::exp(-z * z);
        }
        d.v0[i] = v;
        d.u0[i] = wave.U(x, 0.0) + spec.phi(x);
        if (!(d.v0[i] > 0.0)) throw VacuumRisk("initial specific volume is not positive at x = " + std::to_string(x));
    }
    return d;
}

Field mirror_extend(const HalfLineData& data) {
    if (data.n() < 2) throw ValidationError("half-line data is empty");
    if (std::abs(data.u0[0]) > 1e-12)
        throw CompatibilityError("u0(0) = " + io::format_double(data.u0[0]) + " violates the wall condition");
    const std::size_t m = data.n() - 1;
    Field f;
    f.dx = data.dx;
    f.x0 = -data.dx * static_cast<double>(m);
    f.v.resize(2 * m + 1);
    f.u.resize(2 * m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        f.v[m + i] = data.v0[i];
        f.v[m - i] = data.v0[i];
        f.u[m + i] = data.u0[i];
        f.u[m - i] = -data.u0[i];
    }
    f.u[m] = 0.0;
    return f;
}

double domain_half_width(const ProfileTable& profile, double X0, double t_end, double period) {
    const auto& sh = profile.shock();
    const double span = std::log(std::max(sh.theta, 1.0) / 1e-12) / sh.c_plus;
    return sh.s * t_end + std::max(X0, 0.0) + span + 10.0 * period;
}

void step_field(Field& f, PeriodicState& far_left, PeriodicState& far_right, double dt) {
    require_aligned(f, far_left);
    require_aligned(f, far_right);
    const std::size_t m = far_right.n_cells();
    scheme::StageTrace tl, tr;
    scheme::step_periodic(far_left.gas, far_left.dx(), dt, far_left.v, far_left.u, &tl);
    scheme::step_periodic(far_right.gas, far_right.dx(), dt, far_right.v, far_right.u, &tr);
    far_left.t += dt;
    far_right.t += dt;
    scheme::EdgeFeed left{scheme::EdgeKind::driven, &tl, cell_index(f.x(0), f.dx, m)};
    scheme::EdgeFeed right{scheme::EdgeKind::driven, &tr, cell_index(f.x(f.n() - 1), f.dx, m)};
    scheme::step_line(far_right.gas, f.dx, dt, f.v, f.u, left, right, nullptr);
    f.t += dt;
}

void step_wall_field(Field& f, PeriodicState& far_right, double dt) {
    require_aligned(f, far_right);
    const std::size_t m = far_right.n_cells();
    scheme::StageTrace tr;
    scheme::step_periodic(far_right.gas, far_right.dx(), dt, far_right.v, far_right.u, &tr);
    far_right.t += dt;
    scheme::EdgeFeed left{scheme::EdgeKind::wall, nullptr, 0};
    scheme::EdgeFeed right{scheme::EdgeKind::driven, &tr, cell_index(f.x(f.n() - 1), f.dx, m)};
    scheme::step_line(far_right.gas, f.dx, dt, f.v, f.u, left, right, nullptr);
    f.t += dt;
}

Field restrict_half(const Field& f) {
    const auto m = static_cast<std::size_t>(std::llround(-f.x0 / f.dx));
    Field h;
    h.x0 = 0.0;
    h.dx = f.dx;
    h.t = f.t;
    h.v.assign(f.v.begin() + static_cast<std::ptrdiff_t>(m), f.v.end());
    h.u.assign(f.u.begin() + static_cast<std::ptrdiff_t>(m), f.u.end());
    return h;
}

RunResult run(const HalfLineData& data, const GasParams& g, const ShockData& shock, double t_end,
              const RunOptions& opts) {
    if (!(t_end >= 0.0)) throw ConfigError("time.t_end", "must be >= 0");
    const std::size_t m = steps_per_period(data.dx, data.spec.period);
    PeriodicState right = make_periodic_ics(data.spec, Side::right, shock, g, m);
    PeriodicState left = make_periodic_ics(data.spec, Side::left, shock, g, m);
    const bool mirrored = opts.mode == RunMode::mirrored;

    Field f;
    if (mirrored) {
        f = mirror_extend(data);
        f.v.front() = left.v_at(f.x(0));
        f.u.front() = left.u_at(f.x(0));
    } else {
        if (std::abs(data.u0[0]) > 1e-12) throw CompatibilityError("u0(0) must vanish at the wall");
        f.dx = data.dx;
        f.x0 = 0.0;
        f.v = data.v0;
        f.u = data.u0;
        f.u[0] = 0.0;
    }
    f.v.back() = right.v_at(f.x(f.n() - 1));
    f.u.back() = right.u_at(f.x(f.n() - 1));
    const std::size_t center = mirrored ? (f.n() - 1) / 2 : 0;
    const double half_width = f.x(f.n() - 1);

    std::vector<double> outputs = opts.output_times;
    std::sort(outputs.begin(), outputs.end());
    for (double t : outputs)
        if (t < 0.0 || t > t_end * (1.0 + 1e-12)) throw ConfigError("time.snapshots", "output times must lie in [0, t_end]");

    RunResult res;
    res.dt_min = 1e300;
    auto contamination = [&](const Field& fld) {
        const double probe = 0.9 * half_width;
        const auto ir = static_cast<std::size_t>(std::llround((probe - fld.x0) / fld.dx));
        double dev = std::abs(fld.v[ir] - right.v_at(fld.x(ir)));
        if (mirrored) {
            const auto il = static_cast<std::size_t>(std::llround((-probe - fld.x0) / fld.dx));
            dev = std::max(dev, std::abs(fld.v[il] - left.v_at(fld.x(il))));
        }
        if (dev > opts.contamination_tol)
            throw DomainTooSmall("edge contamination " + io::format_double(dev) + " at t = " +
                                 io::format_double(fld.t) + "; enlarge the domain");
    };
    auto snapshot = [&]() {
        contamination(f);
        res.snapshots.push_back(f);
        res.restricted.push_back(mirrored ? restrict_half(f) : f);
        res.wall_u.push_back(std::abs(f.u[center]));
        double pv = 0.0, pu = 0.0;
        if (mirrored) {
            for (std::size_t i = 1; i <= center; ++i) {
                pv = std::max(pv, std::abs(f.v[center - i] - f.v[center + i]));
                pu = std::max(pu, std::abs(f.u[center - i] + f.u[center + i]));
            }
        }
        res.parity_v.push_back(pv);
        res.parity_u.push_back(pu);
    };

    std::size_t next = 0;
    const double tiny = 1e-12 * std::max(1.0, t_end);
    while (next < outputs.size() && outputs[next] <= tiny) {
        snapshot();
        ++next;
    }
    while (f.t < t_end - tiny) {
        const double stop = next < outputs.size() ? outputs[next] : t_end;
        double dt = max_step(g, opts.cfl, f, mirrored ? &left : nullptr, right);
        if (f.t + dt > stop - tiny) dt = stop - f.t;

        double mass0 = 0.0, mom0 = 0.0;
        if (opts.audit && mirrored) {
            mass0 = interior_sum(f.v) * f.dx;
            mom0 = interior_sum(f.u) * f.dx;
        }
        if (mirrored) {
            if (opts.audit) {
                // Same as step_field, with the flux audit switched on.
                scheme::StageTrace tl, tr;
                scheme::step_periodic(g, left.dx(), dt, left.v, left.u, &tl);
                scheme::step_periodic(g, right.dx(), dt, right.v, right.u, &tr);
                left.t += dt;
                right.t += dt;
                scheme::EdgeFeed le{scheme::EdgeKind::driven, &tl, cell_index(f.x(0), f.dx, m)};
                scheme::EdgeFeed re{scheme::EdgeKind::driven, &tr, cell_index(f.x(f.n() - 1), f.dx, m)};
                scheme::FluxAudit audit;
                scheme::step_line(g, f.dx, dt, f.v, f.u, le, re, &audit);
                f.t += dt;
                const double dm = interior_sum(f.v) * f.dx - mass0;
                const double dp = interior_sum(f.u) * f.dx - mom0;
                res.max_mass_audit = std::max(res.max_mass_audit, std::abs(dm - audit.mass) / std::abs(mass0));
                res.max_momentum_audit =
                    std::max(res.max_momentum_audit,
                             std::abs(dp - audit.momentum) / std::max(std::abs(mom0), mass0 * std::abs(shock.u_plus)));
            } else {
                step_field(f, left, right, dt);
            }
        } else {
            step_wall_field(f, right, dt);
        }
        ++res.steps;
        res.dt_min = std::min(res.dt_min, dt);
        res.dt_max = std::max(res.dt_max, dt);
        if (res.steps % 100 == 1) res.dt_trace.emplace_back(f.t, dt);
        res.max_wall_u = std::max(res.max_wall_u, std::abs(f.u[center]));
        if (std::abs(f.t - stop) <= tiny) {
            f.t = stop;
            while (next < outputs.size() && std::abs(outputs[next] - stop) <= tiny) {
                snapshot();
                ++next;
            }
        }
    }
    if (res.steps == 0) res.dt_min = 0.0;
    return res;
}

void write_field_csv(std::ostream& os, const Field& f) {
    io::CsvWriter csv(os, {"x", "v", "u"});
    for (std::size_t i = 0; i < f.n(); ++i) csv.row({f.x(i), f.v[i], f.u[i]});
}

} // namespace vsw
