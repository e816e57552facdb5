#pragma once

/// @file gas.hpp
/// @brief Polytropic pressure law p = a v^-gamma and viscosity mu = v^-alpha.

#include <cmath>

namespace vsw {

struct GasParams {
    double a = 1.0;     ///< pressure coefficient, > 0
    double gamma = 1.0; ///< adiabatic exponent, >= 1
    double alpha = 0.0; ///< viscosity exponent, >= 0

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

/// Isothermal defaults with closed forms (a=1, gamma=1, alpha=0).
GasParams default_gas();
/// Physically flavored defaults (a=1, gamma=1.4, alpha=0).
GasParams physical_gas();

double pressure(const GasParams& g, double v);
double dpressure(const GasParams& g, double v);
double d2pressure(const GasParams& g, double v);
double viscosity(const GasParams& g, double v);
/// 1 / v^(alpha+1), the coefficient of u_x in the viscous stress.
double stress_coeff(const GasParams& g, double v);
/// g(v) = v^-alpha / alpha, or -ln v when alpha = 0; g'(v) = -stress_coeff(v).
double g_anti(const GasParams& g, double v);
/// sqrt(-p'(v)).
double sound_speed(const GasParams& g, double v);
/// p(v + dv) - p(v) without cancellation for small dv.
double pressure_increment(const GasParams& g, double v, double dv);

namespace detail {

// Unchecked versions for inner loops where positivity is verified per step.
inline double fast_pressure(const GasParams& g, double v) {
    return g.gamma == 1.0 ? g.a / v : g.a * std::pow(v, -g.gamma);
}

inline double fast_stress(const GasParams& g, double v) {
    return g.alpha == 0.0 ? 1.0 / v : std::pow(v, -(g.alpha + 1.0));
}

} // namespace detail

} // namespace vsw
