#include <doctest.h>

#include "vsw/errors.hpp"
#include "vsw/hugoniot.hpp"
#include "vsw/periodic.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace vsw;

namespace {

ShockData reference_shock() { return solve_rh(physical_gas(), 2.0, -0.78808); }

PerturbationSpec single_mode(double eps) {
    PerturbationSpec p;
    p.epsilon = eps;
    p.zeta_modes = {{1, 1.0, 0.0}};
    p.phi_modes = {{1, 0.0, 1.0}};
    return p;
}

// Linearized single-mode oracle: v' = i k u, u' = -p'(v) i k v - mu k^2 u,
// integrated with small RK4 steps; returns the H^2 norm at time T.
double linear_h2(const GasParams& g, double vbar, const PerturbationSpec& p, double T) {
    using C = std::complex<double>;
    const double k = 2.0 * std::numbers::pi / p.period;
    const double dp = dpressure(g, vbar);
    const double mu = stress_coeff(g, vbar);
    const C I(0.0, 1.0);
    // a cos + b sin = Re((a - i b) e^{ikx}).
    C cv(p.epsilon * p.zeta_modes[0].cos, -p.epsilon * p.zeta_modes[0].sin);
    C cu(p.epsilon * p.phi_modes[0].cos, -p.epsilon * p.phi_modes[0].sin);
    auto fv = [&](C, C u) { return I * k * u; };
    auto fu = [&](C v, C u) { return -dp * I * k * v - mu * k * k * u; };
    const int n = 20000;
    const double h = T / n;
    for (int i = 0; i < n; ++i) {
        const C k1v = fv(cv, cu), k1u = fu(cv, cu);
        const C k2v = fv(cv + 0.5 * h * k1v, cu + 0.5 * h * k1u), k2u = fu(cv + 0.5 * h * k1v, cu + 0.5 * h * k1u);
        const C k3v = fv(cv + 0.5 * h * k2v, cu + 0.5 * h * k2u), k3u = fu(cv + 0.5 * h * k2v, cu + 0.5 * h * k2u);
        const C k4v = fv(cv + h * k3v, cu + h * k3u), k4u = fu(cv + h * k3v, cu + h * k3u);
        cv += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        cu += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    }
    const double w = 1.0 + k * k + k * k * k * k;
    return std::sqrt(0.5 * p.period * w * (std::norm(cv) + std::norm(cu)));
}

} // namespace

TEST_CASE("initial data and exact norms") {
    const auto sh = reference_shock();
    const auto spec = single_mode(1e-2);
    const auto st = make_periodic_ics(spec, Side::right, sh, physical_gas(), 256);
    CHECK(st.mean_v == doctest::Approx(sh.v_plus).epsilon(1e-14));
    CHECK(st.mean_u == doctest::Approx(sh.u_plus).epsilon(1e-14));
    const auto s = sample_periodic(st);
    CHECK(s.h2_dev == doctest::Approx(std::hypot(spec.zeta_h2(), spec.phi_h2())).epsilon(1e-10));
    const auto left = make_periodic_ics(spec, Side::left, sh, physical_gas(), 256);
    CHECK(left.mean_u == doctest::Approx(-sh.u_plus).epsilon(1e-14));
    CHECK(left.v[10] == doctest::Approx(sh.v_plus + spec.zeta(-left.x(10))));
    CHECK(left.u[10] == doctest::Approx(-sh.u_plus - spec.phi(-left.x(10))));
}

TEST_CASE("constant state is a fixed point") {
    const auto sh = reference_shock();
    auto st = make_periodic_ics(single_mode(0.0), Side::right, sh, physical_gas(), 128);
    const auto v0 = st.v, u0 = st.u;
    const double dt = periodic_dt(st);
    for (int i = 0; i < 1000; ++i) step_periodic(st, dt);
    double worst = 0.0;
    for (std::size_t i = 0; i < v0.size(); ++i)
        worst = std::max({worst, std::abs(st.v[i] - v0[i]), std::abs(st.u[i] - u0[i])});
    CHECK(worst < 1e-14);
}

TEST_CASE("means are conserved over many steps") {
    const auto sh = reference_shock();
    auto st = make_periodic_ics(single_mode(5e-2), Side::right, sh, physical_gas(), 64);
    const double dt = periodic_dt(st);
    for (int i = 0; i < 10000; ++i) step_periodic(st, dt);
    const auto s = sample_periodic(st);
    CHECK(std::abs(s.mean_u - st.mean_u) / std::abs(st.mean_u) < 1e-10);
    CHECK(std::abs(s.mean_v - st.mean_v) / st.mean_v < 1e-10);
}

TEST_CASE("small-amplitude decay follows the linearized oracle") {
    for (double alpha : {0.0, 1.0}) {
        const GasParams g{1.0, 1.4, alpha};
        const auto sh = solve_rh(g, 2.0, -0.78808);
        const auto spec = single_mode(1e-5);
        auto st = make_periodic_ics(spec, Side::right, sh, g, 256);
        evolve_periodic(st, 2.0);
        const double got = sample_periodic(st).h2_dev;
        CAPTURE(alpha);
        CHECK(got == doctest::Approx(linear_h2(g, 2.0, spec, 2.0)).epsilon(2e-3));
    }
}

TEST_CASE("decay fit is stable in the amplitude and needs a perturbation") {
    const auto sh = reference_shock();
    auto fit = [&](double eps) {
        auto st = make_periodic_ics(single_mode(eps), Side::right, sh, physical_gas(), 256);
        PeriodicHistory h;
        evolve_periodic(st, 30.0, &h);
        return std::pair{fit_decay(h), h};
    };
    const auto [s1, h1] = fit(1e-2);
    const auto [s2, h2] = fit(2e-2);
    CHECK(s1 > 0.0);
    CHECK(std::abs(s2 / s1 - 1.0) < 0.05);
    CHECK(h1.back().h2_dev < 0.1 * h1.front().h2_dev);
    CHECK_THROWS_AS(fit(0.0), FitUnavailable);
}

TEST_CASE("perturbation validation") {
    auto p = single_mode(1e-2);
    p.zeta_modes.push_back({0, 1.0, 0.0});
    CHECK_THROWS_AS(p.validate(), ConfigError);
    CHECK(single_mode(0.0).is_zero());
    const auto big = single_mode(3.0);
    CHECK_THROWS_AS(make_periodic_ics(big, Side::right, reference_shock(), physical_gas(), 64), VacuumRisk);
}

TEST_CASE("left background is the reflection of the right one") {
    const auto sh = reference_shock();
    const auto spec = single_mode(1e-2);
    auto r = make_periodic_ics(spec, Side::right, sh, physical_gas(), 128);
    auto l = make_periodic_ics(spec, Side::left, sh, physical_gas(), 128);
    const double l2_0 = sample_periodic(r).l2_dev;
    evolve_periodic(r, 20.0);
    evolve_periodic(l, 20.0);
    const std::size_t n = r.n_cells();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (n - i) % n;
        worst = std::max({worst, std::abs(l.v[i] - r.v[j]), std::abs(l.u[i] + r.u[j])});
    }
    CHECK(worst < 1e-8);
    CHECK(sample_periodic(r).l2_dev < l2_0);
}
