#include <doctest.h>

#include "vsw/ansatz.hpp"
#include "vsw/config.hpp"
#include "vsw/diagnostics.hpp"
#include "vsw/experiment.hpp"
#include "vsw/hugoniot.hpp"
#include "vsw/profile.hpp"

#include <cmath>
#include <numbers>

using namespace vsw;

namespace {

std::vector<double> gaussian(double x0, double dx, std::size_t n) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x0 + dx * static_cast<double>(i);
        f[i] = std::exp(-x * x);
    }
    return f;
}

// Zero-perturbation ansatz pieces shared by several cases.
struct Composite {
    ExperimentConfig cfg = reference_config();
    ShockData shock;
    ProfileTable profile;
    PeriodicState left, right;
    Composite() {
        cfg.perturbation.epsilon = 0.0;
        shock = shock_from_config(cfg);
        profile = solve_profile(cfg.gas, shock);
        left = make_periodic_ics(cfg.perturbation, Side::left, shock, cfg.gas, 64);
        right = make_periodic_ics(cfg.perturbation, Side::right, shock, cfg.gas, 64);
    }
};

} // namespace

TEST_CASE("anti-derivatives of a Gaussian") {
    const double dx = 1e-2;
    const std::size_t n = 1601;
    const auto f = gaussian(-8.0, dx, n);
    const auto F = antiderivative(f, dx);
    const auto R = antiderivative_right(f, dx);
    const double c = 0.5 * std::sqrt(std::numbers::pi);
    double el = 0.0, er = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -8.0 + dx * static_cast<double>(i);
        el = std::max(el, std::abs(F[i] - c * (1.0 + std::erf(x))));
        er = std::max(er, std::abs(R[i] + c * (1.0 - std::erf(x))));
    }
    CHECK(el < 1e-8);
    CHECK(er < 1e-8);
    const std::vector<double> zero(50, 0.0);
    for (double x : antiderivative(zero, 0.1)) CHECK(x == 0.0);
    CHECK_FALSE(edge_contaminated(f));
    CHECK(edge_contaminated(gaussian(-1.0, dx, 100)));
    CHECK(edge_contaminated(gaussian(-8.0, dx, 801), 1e-10, false));
}

TEST_CASE("effective velocity") {
    const GasParams g = default_gas();
    Field c;
    c.dx = 0.1;
    c.v.assign(20, 2.0);
    c.u.assign(20, -0.3);
    for (double h : effective_velocity(c, g)) CHECK(h == -0.3);

    // Bump v = 1 + e^{-x^2}: h = u - v_x / v, second-order accurate.
    auto err = [&](double dx) {
        Field f;
        f.x0 = -6.0;
        f.dx = dx;
        const auto n = static_cast<std::size_t>(std::llround(12.0 / dx)) + 1;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = f.x(i);
            f.v.push_back(1.0 + std::exp(-x * x));
            f.u.push_back(0.0);
        }
        const auto h = effective_velocity(f, g);
        double e = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double x = f.x(i);
            const double exact = 2.0 * x * std::exp(-x * x) / (1.0 + std::exp(-x * x));
            e = std::max(e, std::abs(h[i] - exact));
        }
        return e;
    };
    const double e1 = err(0.04), e2 = err(0.02);
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("nonlinear terms on the composite") {
    const Composite c;
    const PeriodicView lv(c.left), rv(c.right);
    const double beta = 15.0;
    const AnsatzFields a(c.profile, lv, rv, beta, beta, 0.0);
    Field f;
    f.x0 = -40.0;
    f.dx = 0.02;
    for (int i = 0; i <= 4000; ++i) {
        f.v.push_back(a.V(f.x(i)));
        f.u.push_back(a.U(f.x(i)));
    }
    const auto nl = nonlinear_terms(f, a, c.cfg.gas);
    for (std::size_t i = 0; i < f.n(); ++i) {
        CHECK(std::abs(nl.G[i]) < 1e-14);
        CHECK(nl.p_rel[i] == 0.0);
    }
    CHECK(nl.max_J < 1e-3);
    CHECK(nl.min_f >= -dpressure(c.cfg.gas, c.shock.v_plus) * (1.0 - 1e-9));

    // Small bump: |p(v|V)| / phi_x^2 tends to p''(V)/2.
    Field b = f;
    double bound = 0.0;
    for (std::size_t i = 0; i < b.n(); ++i) {
        const double x = b.x(i);
        b.v[i] += 1e-3 * std::exp(-std::pow(x - 10.0, 2));
        bound = std::max(bound, 0.5 * d2pressure(c.cfg.gas, std::min(b.v[i], f.v[i])));
    }
    const auto nb = nonlinear_terms(b, a, c.cfg.gas);
    CHECK(nb.max_prel_ratio > 0.0);
    CHECK(nb.max_prel_ratio <= bound * 1.01);
}

TEST_CASE("perturbation anti-derivatives and the effective identity") {
    const Composite c;
    const PeriodicView lv(c.left), rv(c.right);
    const AnsatzFields a(c.profile, lv, rv, 12.0, 12.0, 0.0);
    Field f;
    f.x0 = -50.0;
    f.dx = 0.02;
    for (int i = 0; i <= 5000; ++i) {
        const double x = f.x(i);
        f.v.push_back(a.V(x) + 0.01 * (std::exp(-std::pow(x - 12.0, 2)) - std::exp(-std::pow(x + 12.0, 2))));
        f.u.push_back(a.U(x) + 0.02 * std::exp(-std::pow(x - 3.0, 2)));
    }
    const auto p = compute_perturbation(f, a, c.cfg.gas);
    CHECK_FALSE(p.contaminated);
    // The v bumps carry opposite mass, the u bump sqrt(pi) * 0.02.
    CHECK(std::abs(p.phi_end) < 1e-9);
    CHECK(p.psi_end == doctest::Approx(0.02 * std::sqrt(std::numbers::pi)).epsilon(1e-6));
    // Phi - psi integrates g(v) - g(V), which vanishes at both ends.
    CHECK(std::abs(p.Phi_end - p.psi_end) < 1e-5);
    CHECK(p.supdev_v == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(p.phix_l2 > 0.0);
}

TEST_CASE("error terms and convergence metric") {
    const Composite c;
    const PeriodicView lv(c.left), rv(c.right);
    const double beta = 15.0, t = 2.0;
    const AnsatzFields a(c.profile, lv, rv, beta, beta, t);
    const CompositeWave w(c.profile, beta);
    const Grid grid{-40.0, 0.05, 1601};
    const auto e = error_terms(a, w, grid);
    CHECK(e.q_l2 < 1e-14);
    CHECK(e.z_l2 < 1e-14);

    const AnsatzFields shifted(c.profile, lv, rv, beta + 0.1, beta, t);
    CHECK(error_terms(shifted, w, grid).q_inf > 1e-3);

    // A field equal to the shifted profile has zero metric.
    Field half;
    half.dx = 0.05;
    half.t = t;
    const double shift = c.shock.s * t + beta;
    for (int i = 0; i <= 1000; ++i) {
        half.v.push_back(c.profile.V(half.x(i) - shift));
        half.u.push_back(c.profile.U(half.x(i) - shift));
    }
    const auto m = convergence_metric(half, c.profile, beta, &a);
    CHECK(m.sup_metric == 0.0);
    CHECK(m.q_inf < 1e-14);
    CHECK(m.mirror_tail < 1e-6);
}

TEST_CASE("ansatz error decays with the background") {
    auto cfg = reference_config();
    cfg.beta1 = 8.0;
    cfg.t_end = 40.0;
    cfg.dx = 0.05;
    const auto profile = solve_profile(cfg.gas, shock_from_config(cfg));
    const auto sp = run_shift_pipeline(cfg, profile, {5.0, 40.0});
    REQUIRE(sp.run.snapshots.size() == 2);
    const Grid grid{-60.0, aligned_dx(0.05, cfg.perturbation.period), 2400};
    const CompositeWave w(profile, sp.beta);
    std::vector<double> q;
    for (const auto& s : sp.run.snapshots) {
        const PeriodicView lv(s.left), rv(s.right);
        const AnsatzFields a(profile, lv, rv, s.X, s.Y, s.t);
        q.push_back(error_terms(a, w, grid).q_l2);
    }
    CHECK(q[1] < q[0]);
}

TEST_CASE("source norms vanish with the sources") {
    SourceEval e;
    e.grid = Grid{0.0, 0.1, 100};
    e.F1.assign(100, 0.0);
    e.F2.assign(100, 0.0);
    const auto n = source_norms(e);
    CHECK(n.F1_h2 == 0.0);
    CHECK(n.F2_h1 == 0.0);
    e.F1.assign(100, 1.0);
    // Constant on [0, 9.9]: derivatives vanish, L2 norm is sqrt(9.9).
    CHECK(source_norms(e).F1_h2 == doctest::Approx(std::sqrt(9.9)).epsilon(1e-12));
}
