#include <doctest.h>

#include "vsw/errors.hpp"
#include "vsw/hugoniot.hpp"
#include "vsw/profile.hpp"

#include <cmath>

using namespace vsw;

namespace {

ShockData isothermal_shock() { return solve_rh(default_gas(), 2.0, -std::sqrt(0.5)); }

// Closed-form isothermal, constant-viscosity profile: logistic with rate s theta.
double logistic(const ShockData& d, double xi) {
    return d.v_minus + d.theta / (1.0 + std::exp(-d.s * d.theta * xi));
}

} // namespace

TEST_CASE("right-hand side at the reference point") {
    const auto d = isothermal_shock();
    CHECK(h_rhs(default_gas(), d, 1.5) == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
    CHECK(std::abs(h_rhs(default_gas(), d, d.v_minus)) < 1e-12);
    CHECK(std::abs(h_rhs(default_gas(), d, d.v_plus)) < 1e-12);
}

TEST_CASE("isothermal profile matches the logistic closed form") {
    const auto d = isothermal_shock();
    CHECK(d.c_minus == doctest::Approx(d.s * d.theta).epsilon(1e-10));
    CHECK(d.c_plus == doctest::Approx(d.s * d.theta).epsilon(1e-10));
    const auto t = solve_profile(default_gas(), d);
    CHECK(t.V(0.0) == doctest::Approx(1.5));
    for (double xi = -30.0; xi <= 30.0; xi += 0.37) {
        CAPTURE(xi);
        CHECK(std::abs(t.V(xi) - logistic(d, xi)) < 1e-9);
        CHECK(std::abs(t.U(xi) + d.s * (logistic(d, xi) - d.v_minus)) < 1e-9);
        const double y = (logistic(d, xi) - d.v_minus) / d.theta;
        CHECK(std::abs(t.dV(xi) - d.s * d.theta * d.theta * y * (1.0 - y)) < 1e-9);
    }
    // Deep tail keeps relative precision.
    const double xi = -25.0;
    CHECK(t.dev_minus(xi) == doctest::Approx(logistic(d, xi) - d.v_minus).epsilon(1e-6));
}

TEST_CASE("profile is monotone and satisfies the ODE at nodes") {
    for (double gamma : {1.0, 1.4, 2.0})
        for (double alpha : {0.0, 1.0}) {
            const GasParams g{1.0, gamma, alpha};
            const auto d = solve_rh(g, 3.0, -1.0);
            const auto t = solve_profile(g, d);
            for (std::size_t i = 1; i < t.size(); ++i) CHECK(t.node_V(i) >= t.node_V(i - 1));
            // s V' / V^(a+1) - h(V) with a sixth-order central slope of the node values.
            double worst = 0.0;
            const double h = t.step();
            for (std::size_t i = 3; i + 3 < t.size(); i += 7) {
                auto V = [&](int k) { return t.node_V(i + k); };
                const double fd = (V(3) - 9.0 * V(2) + 45.0 * V(1) - 45.0 * V(-1) + 9.0 * V(-2) - V(-3)) / (60.0 * h);
                worst = std::max(worst, std::abs(d.s * fd / std::pow(V(0), alpha + 1.0) - h_rhs(g, d, V(0))));
            }
            CAPTURE(gamma);
            CAPTURE(alpha);
            CHECK(worst < 1e-8);
        }
}

TEST_CASE("tail fits recover the linearized rates") {
    const GasParams g{1.0, 1.4, 0.5};
    const auto d = solve_rh(g, 4.0, -1.5);
    const auto t = solve_profile(g, d);
    const auto f = fit_tail_rates(t);
    CHECK(f.rate_minus == doctest::Approx(d.c_minus).epsilon(0.1));
    CHECK(f.rate_plus == doctest::Approx(d.c_plus).epsilon(0.1));
}

TEST_CASE("mirror, ramps and composite wave") {
    const auto d = isothermal_shock();
    const auto t = solve_profile(default_gas(), d);
    const MirrorProfile m(t);
    const Ramps r(t);
    const CompositeWave w(t, 7.0);
    for (double x = -10.0; x <= 10.0; x += 0.5) {
        CHECK(m.V(x) == t.V(-x));
        CHECK(m.U(x) == -t.U(-x));
        CHECK(r.g2(x) + r.one_minus_g2(x) == doctest::Approx(1.0));
        CHECK(r.g1(x) + r.one_minus_g1(x) == doctest::Approx(1.0));
        CHECK(r.g1(x) == doctest::Approx((m.V(x) - d.v_plus) / (d.v_minus - d.v_plus)));
        // Telescoping: with zero perturbation the ansatz V equals the composite.
        const double ansatz = d.v_plus * r.one_minus_g1(x + 7.0) + d.v_minus * (r.g1(x + 7.0) - r.g2(x - 7.0)) +
                              d.v_plus * r.g2(x - 7.0);
        CHECK(ansatz == doctest::Approx(w.V(x, 0.0)).epsilon(1e-13));
    }
    for (int i = 0; i < 20; ++i) {
        const double tt = 0.7 * i;
        CHECK(std::abs(w.U(0.0, tt)) < 1e-10);
        CHECK(w.V(1.3, tt) == doctest::Approx(w.V(-1.3, tt)).epsilon(1e-14));
    }
    // Derivatives against central differences.
    const double h = 1e-5;
    for (double x : {-8.0, -6.5, 0.0, 6.8, 9.0}) {
        CHECK(w.Vx(x, 0.3) == doctest::Approx((w.V(x + h, 0.3) - w.V(x - h, 0.3)) / (2 * h)).epsilon(1e-6));
        CHECK(w.Vt(x, 0.3) == doctest::Approx((w.V(x, 0.3 + h) - w.V(x, 0.3 - h)) / (2 * h)).epsilon(1e-6));
        CHECK(w.Ux(x, 0.3) == doctest::Approx((w.U(x + h, 0.3) - w.U(x - h, 0.3)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("profile rejects bad input") {
    ShockData d;
    d.v_minus = 2.0;
    d.v_plus = 1.0;
    d.s = 1.0;
    CHECK_THROWS_AS(solve_profile(default_gas(), d), InvalidShock);
    ProfileOptions o;
    o.tail_tol = 0.0;
    CHECK_THROWS_AS(solve_profile(default_gas(), isothermal_shock(), o), ConfigError);
}
