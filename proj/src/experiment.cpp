#include "vsw/experiment.hpp"

#include "vsw/errors.hpp"
#include "vsw/io.hpp"
#include "vsw/numerics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

namespace vsw {

using nlohmann::ordered_json;

namespace {

ordered_json shock_json(const ShockData& s) {
    return {{"v_minus", s.v_minus}, {"v_plus", s.v_plus}, {"u_minus", s.u_minus},
            {"u_plus", s.u_plus},   {"s", s.s},           {"b", s.b},
            {"theta", s.theta},     {"c_minus", s.c_minus}, {"c_plus", s.c_plus}};
}

ordered_json gas_json(const GasParams& g) {
    return {{"a", g.a}, {"gamma", g.gamma}, {"alpha", g.alpha}};
}

void write_json(const std::filesystem::path& p, const ordered_json& j) {
    io::write_file(p, j.dump(2) + "\n");
}

template <class F>
void write_csv(const std::filesystem::path& p, F&& fill) {
    std::ostringstream os;
    fill(os);
    io::write_file(p, os.str());
}

std::optional<double> try_rate(const std::vector<double>& t, const std::vector<double>& y) {
    try {
        return num::fit_exponential_decay(t, y).rate;
    } catch (const FitUnavailable&) {
        return std::nullopt;
    }
}

ordered_json optional_json(const std::optional<double>& x) {
    return x ? ordered_json(*x) : ordered_json(nullptr);
}

double cell_deviation_l2(const PeriodicState& st, double ref) {
    double acc = 0.0;
    for (double v : st.v) acc += (v - ref) * (v - ref);
    return std::sqrt(acc * st.dx());
}

// Even/odd extension of a half-line field (wall mode) onto [-L, L].
Field mirror_field(const Field& half) {
    Field f;
    const std::size_t m = half.n() - 1;
    f.dx = half.dx;
    f.x0 = -static_cast<double>(m) * half.dx;
    f.t = half.t;
    f.v.resize(2 * m + 1);
    f.u.resize(2 * m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        f.v[m + i] = half.v[i];
        f.v[m - i] = half.v[i];
        f.u[m + i] = half.u[i];
        f.u[m - i] = -half.u[i];
    }
    f.u[m] = 0.0;
    return f;
}

std::string snapshot_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%04zu.csv", k);
    return buf;
}

double max_profile_residual(const ProfileTable& p) {
    // |s V' / V^(alpha+1) - h(V)| with sixth-order central differences of the
    // stored deviations.
    const auto& g = p.gas();
    const auto& sh = p.shock();
    const double h = p.step();
    double worst = 0.0;
    for (std::size_t i = 3; i + 3 < p.size(); ++i) {
        const bool left = p.xi(i) <= 0.0;
        auto dev = [&](std::size_t j) { return left ? p.node_dev_minus(j) : -p.node_dev_plus(j); };
        const double d = (dev(i + 3) - 9.0 * dev(i + 2) + 45.0 * dev(i + 1) - 45.0 * dev(i - 1) +
                          9.0 * dev(i - 2) - dev(i - 3)) / (60.0 * h);
        const double V = p.node_V(i);
        worst = std::max(worst, std::abs(sh.s * d / std::pow(V, g.alpha + 1.0) - h_rhs(g, sh, V)));
    }
    return worst;
}

} // namespace

ShockData shock_from_config(const ExperimentConfig& cfg) {
    cfg.gas.validate();
    return solve_rh(cfg.gas, cfg.v_plus, cfg.u_plus);
}

ShiftPipeline run_shift_pipeline(const ExperimentConfig& cfg, const ProfileTable& profile,
                                 const std::vector<double>& snapshot_times, double dt_scale) {
    const auto& g = cfg.gas;
    const auto& sh = profile.shock();
    const auto& spec = cfg.perturbation;
    ShiftPipeline sp;
    const double dx = aligned_dx(cfg.dx, spec.period);
    auto snap_length = [&](double L) { return std::ceil(L / dx) * dx; };

    double L = cfg.length > 0.0 ? snap_length(cfg.length)
                                : snap_length(domain_half_width(profile, cfg.beta1 + 1.0, cfg.t_end, spec.period));
    sp.data = make_half_line_data(profile, spec, cfg.beta1, dx, L, cfg.bump);
    sp.x0 = find_X0(profile, sp.data);
    if (cfg.length == 0.0) {
        const double need = domain_half_width(profile, sp.x0.X0, cfg.t_end, spec.period);
        if (need > L) {
            L = snap_length(need);
            sp.data = make_half_line_data(profile, spec, cfg.beta1, dx, L, cfg.bump);
            sp.x0 = find_X0(profile, sp.data);
        }
    }
    sp.X_inf = x_infinity(sp.x0.X0, spec, profile);

    const PeriodicState left = make_periodic_ics(spec, Side::left, sh, g, cfg.n_cells);
    const PeriodicState right = make_periodic_ics(spec, Side::right, sh, g, cfg.n_cells);
    const ShiftRateEvaluator ev(profile, spec.period, cfg.n_cells);
    ShiftRunOptions opts;
    opts.t_end = cfg.t_end;
    opts.record_dt = cfg.record_dt;
    opts.snapshot_times = snapshot_times;
    opts.cfl = cfg.cfl;
    opts.dt_scale = dt_scale;

    AnsatzState init;
    init.X = init.X0 = sp.x0.X0;
    init.Y = init.Y0 = sp.x0.X0;
    init.beta1 = cfg.beta1;
    init.X_inf = sp.X_inf;

    ShiftRun first = evolve_shifts(init, left, right, ev, opts);
    sp.y_inf_first = y_infinity(init.Y0, spec, first.left_history, first.right_history, g, sh);
    // Calibrate against the limit the integrated X actually reaches, so that
    // X and Y share one asymptotic value on the discrete level.
    const double X_target = cfg.t_end > 0.0 ? first.state.history.back().X : sp.X_inf;
    sp.Y0 = calibrate_Y0(init.Y0, sp.y_inf_first.Y_inf, X_target);
    if (sp.Y0 == init.Y0) {
        sp.run = std::move(first);
    } else {
        init.Y = init.Y0 = sp.Y0;
        sp.run = evolve_shifts(init, left, right, ev, opts);
    }
    sp.Y_inf = y_infinity(sp.Y0, spec, sp.run.left_history, sp.run.right_history, g, sh).Y_inf;
    sp.beta = sp.X_inf;
    sp.run.state.Y_inf = sp.Y_inf;
    sp.run.state.beta = sp.beta;
    try {
        sp.sigma_left = fit_decay(sp.run.left_history);
        sp.sigma_right = fit_decay(sp.run.right_history);
        sp.sigma_available = true;
    } catch (const FitUnavailable&) {
        sp.sigma_available = false;
    }
    return sp;
}

SnapshotDiagnostics diagnose(const Field& full, const ProfileTable& profile, const GasParams& g,
                             const ShiftSnapshot& shift, double beta) {
    SnapshotDiagnostics d;
    const PeriodicView lv(shift.left), rv(shift.right);
    const AnsatzFields a(profile, lv, rv, shift.X, shift.Y, full.t);
    const Grid grid{full.x0, full.dx, full.n()};
    const auto pp = compute_perturbation(full, a, g);
    const auto src = source_terms(profile, lv, rv, shift.X, shift.Y, shift.Xp, shift.Yp, full.t, grid);
    const auto sn = source_norms(src);
    const auto et = error_terms(a, CompositeWave(profile, beta), grid);
    const auto nl = nonlinear_terms(full, a, g);
    const auto cm = convergence_metric(restrict_half(full), profile, beta, &a);

    d.row = {full.t, cm.sup_metric, pp.phi_l2, pp.phi_h2, pp.psi_l2, sn.F1_h2, sn.F2_h1, et.q_l2, et.z_l2};
    d.metric = cm;
    d.phi_end = pp.phi_end;
    d.psi_end = pp.psi_end;
    d.Phi_end = pp.Phi_end;
    d.phix_inf = pp.phix_inf;
    d.phix_l2 = pp.phix_l2;
    d.phixx_l2 = pp.phixx_l2;
    d.min_f = nl.min_f;
    d.max_prel_ratio = nl.max_prel_ratio;
    d.q_inf = et.q_inf;
    const double vp = profile.shock().v_plus;
    d.perturbation_l2 = cell_deviation_l2(shift.left, vp) + cell_deviation_l2(shift.right, vp);
    d.shift_gap = std::abs(shift.X - beta);
    return d;
}

EvolveResult run_evolve(const ExperimentConfig& cfg, const ProfileTable& profile, bool audit) {
    EvolveResult er;
    const auto times = cfg.output_times();
    er.shift = run_shift_pipeline(cfg, profile, times);
    RunOptions ro;
    ro.mode = cfg.mode;
    ro.cfl = cfg.cfl;
    ro.output_times = times;
    ro.audit = audit && cfg.mode == RunMode::mirrored;
    er.run = run(er.shift.data, cfg.gas, profile.shock(), cfg.t_end, ro);
    if (er.run.snapshots.size() != er.shift.run.snapshots.size())
        throw NumericalError("snapshot count mismatch between field and shift runs");
    for (std::size_t k = 0; k < er.run.snapshots.size(); ++k) {
        const Field full = cfg.mode == RunMode::mirrored ? er.run.snapshots[k] : mirror_field(er.run.snapshots[k]);
        er.diag.push_back(diagnose(full, profile, cfg.gas, er.shift.run.snapshots[k], er.shift.beta));
    }
    return er;
}

SourceEval initial_sources(const ExperimentConfig& cfg, const ProfileTable& profile) {
    ExperimentConfig c = cfg;
    c.t_end = 0.0;
    const auto sp = run_shift_pipeline(c, profile, {0.0});
    const auto& snap = sp.run.snapshots.front();
    const Field f = mirror_extend(sp.data);
    const PeriodicView lv(snap.left), rv(snap.right);
    return source_terms(profile, lv, rv, snap.X, snap.Y, snap.Xp, snap.Yp, 0.0, Grid{f.x0, f.dx, f.n()});
}

std::vector<Check> verify_config(const ExperimentConfig& cfg) {
    std::vector<Check> out;
    auto add = [&](std::string name, bool pass, const std::string& detail) {
        out.push_back({std::move(name), pass, detail});
    };
    auto fmt = [](double x) { return io::format_double(x); };

    const ShockData sh = shock_from_config(cfg);
    const auto rr = rh_residual(cfg.gas, sh);
    add("rh_residual", std::abs(rr.mass) < 1e-10 && std::abs(rr.momentum) < 1e-10,
        "mass " + fmt(rr.mass) + ", momentum " + fmt(rr.momentum));

    const ProfileTable profile = solve_profile(cfg.gas, sh, cfg.profile);
    const double res = max_profile_residual(profile);
    add("profile_ode_residual", res < 1e-8, "max " + fmt(res));
    try {
        const auto tf = fit_tail_rates(profile);
        const double em = std::abs(tf.rate_minus / sh.c_minus - 1.0);
        const double ep = std::abs(tf.rate_plus / sh.c_plus - 1.0);
        add("profile_tail_rates", em < 0.1 && ep < 0.1, "relative errors " + fmt(em) + ", " + fmt(ep));
    } catch (const FitUnavailable& e) {
        add("profile_tail_rates", false, e.what());
    }

    {
        const MirrorProfile m(profile);
        double worst = 0.0;
        for (int i = -200; i <= 200; ++i) {
            const double x = 0.1 * i;
            worst = std::max({worst, std::abs(m.V(x) - profile.V(-x)), std::abs(m.U(x) + profile.U(-x))});
        }
        const CompositeWave w(profile, cfg.beta1);
        double wall = 0.0;
        for (int i = 0; i <= 20; ++i) wall = std::max(wall, std::abs(w.U(0.0, 0.5 * i)));
        add("mirror_identities", worst < 1e-12 && wall < 1e-10,
            "reflection " + fmt(worst) + ", composite wall velocity " + fmt(wall));
    }

    const EvolveResult er = run_evolve(cfg, profile, true);
    const auto& sp = er.shift;

    {
        double drift = 0.0;
        for (const auto* h : {&sp.run.left_history, &sp.run.right_history}) {
            const double v0 = h->front().mean_v, u0 = h->front().mean_u;
            for (const auto& s : *h)
                drift = std::max({drift, std::abs(s.mean_v - v0) / std::abs(v0),
                                  std::abs(s.mean_u - u0) / std::max(std::abs(u0), 1e-300)});
        }
        add("periodic_mean_conservation", drift < 1e-10, "max relative drift " + fmt(drift));
    }

    {
        bool slopes = true;
        for (double s : sp.x0.slope) slopes = slopes && s > 0.0;
        const auto zy = zero_mass_Y(profile, cfg.perturbation, mirror_extend(sp.data));
        add("zero_mass", std::abs(sp.x0.I1_at_root) < 1e-10 && slopes && zy.ok,
            "I1(X0) " + fmt(sp.x0.I1_at_root) + ", I2 max " + fmt(zy.max_abs) +
                (slopes ? ", I1' positive" : ", I1' not positive"));
    }

    {
        const auto& hist = sp.run.state.history;
        const double x_end = hist.back().X;
        double x_half = x_end;
        for (const auto& s : hist)
            if (std::abs(s.t - 0.5 * cfg.t_end) < 1e-9) x_half = s.X;
        const double d1 = std::abs(sp.X_inf - x_end);
        const double d2 = std::abs(x_end - x_half);
        add("shift_consistency", d1 < 1e-4 && d2 < 1e-5,
            "|X_inf - X(t_end)| " + fmt(d1) + ", |X(t_end) - X(t_end/2)| " + fmt(d2));
    }

    if (cfg.mode == RunMode::mirrored) {
        double pv = 0.0;
        for (std::size_t k = 0; k < er.run.parity_v.size(); ++k)
            pv = std::max({pv, er.run.parity_v[k], er.run.parity_u[k]});
        add("parity_and_wall", pv < 1e-8 && er.run.max_wall_u < 1e-6,
            "parity " + fmt(pv) + ", max |u(0,t)| " + fmt(er.run.max_wall_u));
        add("conservation_audit", er.run.max_mass_audit < 1e-10 && er.run.max_momentum_audit < 1e-10,
            "mass " + fmt(er.run.max_mass_audit) + ", momentum " + fmt(er.run.max_momentum_audit));
    }

    {
        const auto& d = er.diag;
        double m5 = -1.0;
        for (const auto& s : d)
            if (std::abs(s.row.t - 5.0) < 1e-9) m5 = s.row.sup_metric;
        if (m5 > 0.0 && cfg.t_end >= 10.0) {
            const double mend = d.back().row.sup_metric;
            add("metric_decay", mend < 0.2 * m5, "metric(5) " + fmt(m5) + ", metric(t_end) " + fmt(mend));
        }
        // Discrete mass balance of a moving front is only exact up to O(dx^2).
        const double floor = 1e-2 * cfg.dx * cfg.dx * profile.shock().theta;
        double worst = 0.0;
        for (const auto& s : d) worst = std::max({worst, std::abs(s.phi_end), std::abs(s.psi_end)});
        const double ref = std::max(std::abs(d.front().phi_end), std::abs(d.front().psi_end));
        add("zero_mass_preservation", worst <= std::max(10.0 * ref, floor),
            "max |phi(+inf)|, |psi(+inf)| " + fmt(worst) + ", t=0 value " + fmt(ref));
        bool interp = true;
        for (const auto& s : d)
            interp = interp && s.phix_inf * s.phix_inf <= 2.0 * s.phix_l2 * s.phixx_l2 + 1e-12;
        add("interpolation_inequality", interp, interp ? "holds at every snapshot" : "violated");
    }
    return out;
}

int cmd_hugoniot(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const auto sh = shock_from_config(cfg);
    const auto r = rh_residual(cfg.gas, sh);
    ordered_json j;
    j["gas"] = gas_json(cfg.gas);
    j["shock"] = shock_json(sh);
    j["residual"] = {{"mass", r.mass}, {"momentum", r.momentum}};
    write_json(out / "shock.json", j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_profile(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const auto sh = shock_from_config(cfg);
    const auto p = solve_profile(cfg.gas, sh, cfg.profile);
    write_csv(out / "profile.csv", [&](std::ostream& os) { write_profile_csv(os, p); });
    ordered_json j;
    j["shock"] = shock_json(sh);
    j["nodes"] = p.size();
    j["step"] = p.step();
    j["xi_min"] = p.xi_min();
    j["xi_max"] = p.xi_max();
    j["truncated"] = {{"left", p.truncated_left()}, {"right", p.truncated_right()}};
    j["max_ode_residual"] = max_profile_residual(p);
    try {
        const auto tf = fit_tail_rates(p);
        j["tail_fit"] = {{"rate_minus", tf.rate_minus}, {"rate_plus", tf.rate_plus},
                         {"prefactor_minus", tf.prefactor_minus}, {"prefactor_plus", tf.prefactor_plus}};
    } catch (const FitUnavailable& e) {
        j["tail_fit"] = nullptr;
    }
    write_json(out / "profile.json", j);
    return 0;
}

int cmd_periodic(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const auto sh = shock_from_config(cfg);
    ordered_json j;
    for (Side side : {Side::left, Side::right}) {
        PeriodicState st = make_periodic_ics(cfg.perturbation, side, sh, cfg.gas, cfg.n_cells);
        PeriodicHistory h;
        evolve_periodic(st, cfg.t_end, &h, cfg.record_dt, cfg.cfl);
        const char* name = side == Side::left ? "left" : "right";
        write_csv(out / (std::string("periodic_") + name + ".csv"), [&](std::ostream& os) { write_periodic_csv(os, h); });
        ordered_json s;
        s["h2_initial"] = h.front().h2_dev;
        s["h2_final"] = h.back().h2_dev;
        s["mean_v_drift"] = std::abs(h.back().mean_v - h.front().mean_v);
        s["mean_u_drift"] = std::abs(h.back().mean_u - h.front().mean_u);
        try {
            s["sigma_fit"] = fit_decay(h);
        } catch (const FitUnavailable&) {
            s["sigma_fit"] = nullptr;
        }
        j[name] = s;
    }
    write_json(out / "periodic.json", j);
    return 0;
}

namespace {

ordered_json shift_summary(const ShiftPipeline& sp, const ExperimentConfig& cfg) {
    const auto& hist = sp.run.state.history;
    ordered_json j;
    j["X0"] = sp.x0.X0;
    j["I1_at_X0"] = sp.x0.I1_at_root;
    j["I1_slope_samples"] = {{"omega", sp.x0.omega}, {"slope", sp.x0.slope}};
    j["X_inf"] = sp.X_inf;
    j["Y0_provisional"] = sp.x0.X0;
    j["Y_inf_provisional"] = sp.y_inf_first.Y_inf;
    j["Y0"] = sp.Y0;
    j["Y_inf"] = sp.Y_inf;
    j["beta"] = sp.beta;
    j["y_degenerate"] = sp.run.y_degenerate;
    j["X_end"] = hist.back().X;
    j["Y_end"] = hist.back().Y;
    j["X_gap"] = std::abs(sp.X_inf - hist.back().X);
    j["t_end"] = cfg.t_end;
    j["sigma_fit"] = sp.sigma_available ? ordered_json(0.5 * (sp.sigma_left + sp.sigma_right)) : ordered_json(nullptr);
    j["half_line"] = {{"dx", sp.data.dx}, {"length", sp.data.length()}, {"nodes", sp.data.n()}};
    return j;
}

} // namespace

int cmd_shift(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const auto sh = shock_from_config(cfg);
    const auto p = solve_profile(cfg.gas, sh, cfg.profile);
    const auto sp = run_shift_pipeline(cfg, p, {});
    write_csv(out / "shift.csv", [&](std::ostream& os) { write_shift_csv(os, sp.run.state.history); });
    ordered_json j = shift_summary(sp, cfg);
    j["shock"] = shock_json(sh);
    write_json(out / "shift.json", j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

namespace {

void write_evolve_outputs(const ExperimentConfig& cfg, const ShockData& sh, const EvolveResult& er,
                          const std::filesystem::path& out) {

    for (std::size_t k = 0; k < er.run.snapshots.size(); ++k)
        write_csv(out / "snapshots" / snapshot_name(k), [&](std::ostream& os) { write_field_csv(os, er.run.snapshots[k]); });
    write_csv(out / "shift.csv", [&](std::ostream& os) { write_shift_csv(os, er.shift.run.state.history); });
    std::vector<DiagnosticsRow> rows;
    for (const auto& d : er.diag) rows.push_back(d.row);
    write_csv(out / "diagnostics.csv", [&](std::ostream& os) { write_diagnostics_csv(os, rows); });

    std::vector<double> t, f1, f2, q, metric;
    for (const auto& r : rows) {
        t.push_back(r.t);
        f1.push_back(r.F1_norm);
        f2.push_back(r.F2_norm);
        q.push_back(r.q_l2);
        metric.push_back(r.sup_metric);
    }
    ordered_json dj;
    dj["rates"] = {{"F1_norm", optional_json(try_rate(t, f1))},
                   {"F2_norm", optional_json(try_rate(t, f2))},
                   {"q_l2", optional_json(try_rate(t, q))},
                   {"sup_metric", optional_json(try_rate(t, metric))}};
    dj["sigma_fit"] = er.shift.sigma_available ? ordered_json(0.5 * (er.shift.sigma_left + er.shift.sigma_right))
                                               : ordered_json(nullptr);
    double sup_phi = 0.0, sup_prel = 0.0, min_f = 1e300;
    for (const auto& d : er.diag) {
        sup_phi = std::max(sup_phi, d.row.phi_h2);
        sup_prel = std::max(sup_prel, d.max_prel_ratio);
        min_f = std::min(min_f, d.min_f);
    }
    dj["sup_phi_h2"] = sup_phi;
    dj["max_prel_ratio"] = sup_prel;
    dj["min_f"] = min_f;
    dj["metric_final"] = metric.back();
    write_json(out / "diagnostics.json", dj);

    ordered_json m;
    m["config"] = ordered_json::parse(to_json(cfg));
    m["shock"] = shock_json(sh);
    m["shift"] = shift_summary(er.shift, cfg);
    const auto& f0 = er.run.snapshots.front();
    m["grid"] = {{"dx", f0.dx}, {"x_min", f0.x0}, {"nodes", f0.n()}};
    m["steps"] = er.run.steps;
    m["dt_min"] = er.run.dt_min;
    m["dt_max"] = er.run.dt_max;
    ordered_json trace = ordered_json::array();
    for (const auto& [tt, dt] : er.run.dt_trace) trace.push_back({tt, dt});
    m["dt_history"] = trace;
    m["wall"] = {{"max_abs_u", er.run.max_wall_u}, {"u_at_snapshots", er.run.wall_u},
                 {"parity_v", er.run.parity_v}, {"parity_u", er.run.parity_u}};
    m["audit"] = {{"mass", er.run.max_mass_audit}, {"momentum", er.run.max_momentum_audit}};
    m["snapshot_times"] = t;
    write_json(out / "manifest.json", m);
}

} // namespace

int cmd_evolve(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const auto sh = shock_from_config(cfg);
    const auto p = solve_profile(cfg.gas, sh, cfg.profile);
    write_evolve_outputs(cfg, sh, run_evolve(cfg, p, true), out);
    return 0;
}

int cmd_verify(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const auto checks = verify_config(cfg);
    ordered_json j = ordered_json::array();
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        j.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all = all && c.pass;
    }
    write_json(out / "verify.json", j);
    return all ? 0 : 2;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const std::string base = to_json(cfg);
    std::vector<ExperimentConfig> cfgs;
    for (double v : cfg.sweep.values)
        cfgs.push_back(parse_config(apply_overrides(base, {cfg.sweep.key + "=" + io::format_double(v)})));

    struct Row {
        double X0 = 0.0, X_inf = 0.0, F1_0 = 0.0, F2_0 = 0.0, metric_end = 0.0;
    };
    auto job = [&](std::size_t i) {
        const auto& c = cfgs[i];
        const auto sh = shock_from_config(c);
        const auto p = solve_profile(c.gas, sh, c.profile);
        const auto er = run_evolve(c, p, false);
        write_evolve_outputs(c, sh, er, out / ("run_" + std::to_string(i)));
        const auto& d0 = er.diag.front().row;
        return Row{er.shift.x0.X0, er.shift.X_inf, d0.F1_norm, d0.F2_norm, er.diag.back().row.sup_metric};
    };

    // Independent runs in parallel; results are gathered in input order.
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<Row> rows(cfgs.size());
    for (std::size_t start = 0; start < cfgs.size(); start += workers) {
        std::vector<std::future<Row>> fut;
        for (std::size_t i = start; i < std::min(cfgs.size(), start + workers); ++i)
            fut.push_back(std::async(std::launch::async, job, i));
        for (std::size_t i = 0; i < fut.size(); ++i) rows[start + i] = fut[i].get();
    }
    write_csv(out / "sweep.csv", [&](std::ostream& os) {
        io::CsvWriter csv(os, {"value", "X0", "X_inf", "F1_norm_t0", "F2_norm_t0", "metric_final"});
        for (std::size_t i = 0; i < rows.size(); ++i)
            csv.row({cfg.sweep.values[i], rows[i].X0, rows[i].X_inf, rows[i].F1_0, rows[i].F2_0, rows[i].metric_end});
    });
    return 0;
}

} // namespace vsw
