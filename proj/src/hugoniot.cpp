#include "vsw/hugoniot.hpp"

#include "vsw/errors.hpp"

#include <cmath>

namespace vsw {

double decay_rate(const GasParams& g, double v, double s) {
    return std::pow(v, g.alpha + 1.0) / s * std::abs(dpressure(g, v) + s * s);
}

ShockData complete_shock(const GasParams& g, double v_minus, double v_plus, double u_plus) {
    ShockData d;
    d.v_minus = v_minus;
    d.v_plus = v_plus;
    d.u_minus = 0.0;
    d.u_plus = u_plus;
    d.theta = v_plus - v_minus;
    d.s = -u_plus / d.theta;
    d.b = -d.s * d.s * v_minus - pressure(g, v_minus);
    d.c_minus = decay_rate(g, v_minus, d.s);
    d.c_plus = decay_rate(g, v_plus, d.s);
    return d;
}

ShockData solve_rh(const GasParams& g, double v_plus, double u_plus) {
    g.validate();
    if (!(v_plus > 0.0)) throw InvalidShock("v_plus must be positive");
    if (!(u_plus < 0.0)) throw InvalidShock("u_plus must be negative for a 2-shock");

    const double target = u_plus * u_plus;
    // Decreasing in vm on (0, v_plus): +inf near 0 (gamma >= 1), -target at v_plus.
    auto f = [&](double vm) {
        return -pressure_increment(g, vm, v_plus - vm) * (v_plus - vm) - target;
    };
    auto df = [&](double vm) {
        return dpressure(g, vm) * (v_plus - vm) + pressure_increment(g, vm, v_plus - vm);
    };

    const double eps = 1e-8 * v_plus;
    double lo = eps;
    double hi = v_plus * (1.0 - 1e-8);
    if (f(lo) < 0.0) throw NoSolution("u_plus^2 exceeds the Hugoniot curve on (0, v_plus)");
    if (f(hi) > 0.0) throw NoSolution("shock too weak to resolve: root lies within 1e-8 of v_plus");

    for (int it = 0; it < 200 && hi - lo > 1e-15 * v_plus; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double vm = 0.5 * (lo + hi);
    for (int it = 0; it < 20; ++it) {
        const double fv = f(vm);
        if (std::abs(fv) < 1e-13 * std::max(1.0, target)) break;
        const double step = fv / df(vm);
        const double next = vm - step;
        if (!(next > 0.0 && next < v_plus)) break;
        vm = next;
        if (std::abs(step) < 1e-17 * v_plus) break;
    }
    return complete_shock(g, vm, v_plus, u_plus);
}

RhResidual rh_residual(const GasParams& g, const ShockData& d) {
    RhResidual r;
    r.mass = -d.s * (d.v_plus - d.v_minus) - (d.u_plus - d.u_minus);
    r.momentum = -d.s * (d.u_plus - d.u_minus) + pressure_increment(g, d.v_minus, d.v_plus - d.v_minus);
    return r;
}

} // namespace vsw
