#pragma once

/// @file hugoniot.hpp
/// @brief Jump conditions for the 2-shock joining (v_minus, 0) to (v_plus, u_plus).

#include "vsw/gas.hpp"

namespace vsw {

struct ShockData {
    double v_minus = 0.0;
    double v_plus = 0.0;
    double u_minus = 0.0;
    double u_plus = 0.0;
    double s = 0.0;       ///< shock speed, > 0
    double b = 0.0;       ///< profile integration constant
    double theta = 0.0;   ///< strength v_plus - v_minus
    double c_minus = 0.0; ///< decay rate of the profile towards v_minus
    double c_plus = 0.0;  ///< decay rate towards v_plus
};

/// Solve u_plus^2 = (p(v_-) - p(v_+))(v_+ - v_-) for v_- in (0, v_plus).
/// Throws InvalidShock for u_plus >= 0 and NoSolution when no root exists.
ShockData solve_rh(const GasParams& g, double v_plus, double u_plus);

/// Fill s, b, theta and the decay rates from the end states.
ShockData complete_shock(const GasParams& g, double v_minus, double v_plus, double u_plus);

/// Exponential rate v^(alpha+1)/s |p'(v) + s^2| of the profile at an end state.
double decay_rate(const GasParams& g, double v, double s);

struct RhResidual {
    double mass = 0.0;     ///< -s (v+ - v-) - (u+ - u-)
    double momentum = 0.0; ///< -s (u+ - u-) + (p(v+) - p(v-))
};

RhResidual rh_residual(const GasParams& g, const ShockData& d);

} // namespace vsw
