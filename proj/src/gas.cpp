#include "vsw/gas.hpp"

#include "vsw/errors.hpp"

#include <string>

namespace vsw {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw DomainError(std::string(what) + ": specific volume must be positive, got " + std::to_string(v));
}

} // namespace

void GasParams::validate() const {
    if (!(a > 0.0)) throw ConfigError("gas.a", "must be > 0");
    if (!(gamma >= 1.0)) throw ConfigError("gas.gamma", "must be >= 1");
    if (!(alpha >= 0.0)) throw ConfigError("gas.alpha", "must be >= 0");
}

GasParams default_gas() { return GasParams{1.0, 1.0, 0.0}; }

GasParams physical_gas() { return GasParams{1.0, 1.4, 0.0}; }

double pressure(const GasParams& g, double v) {
    require_positive(v, "pressure");
    return g.a * std::pow(v, -g.gamma);
}

double dpressure(const GasParams& g, double v) {
    require_positive(v, "dpressure");
    return -g.a * g.gamma * std::pow(v, -g.gamma - 1.0);
}

double d2pressure(const GasParams& g, double v) {
    require_positive(v, "d2pressure");
    return g.a * g.gamma * (g.gamma + 1.0) * std::pow(v, -g.gamma - 2.0);
}

double viscosity(const GasParams& g, double v) {
    require_positive(v, "viscosity");
    return std::pow(v, -g.alpha);
}

double stress_coeff(const GasParams& g, double v) {
    require_positive(v, "stress_coeff");
    return std::pow(v, -(g.alpha + 1.0));
}

double g_anti(const GasParams& g, double v) {
    require_positive(v, "g_anti");
    if (g.alpha == 0.0) return -std::log(v);
    return std::pow(v, -g.alpha) / g.alpha;
}

double sound_speed(const GasParams& g, double v) { return std::sqrt(-dpressure(g, v)); }

double pressure_increment(const GasParams& g, double v, double dv) {
    require_positive(v, "pressure_increment");
    require_positive(v + dv, "pressure_increment");
    return g.a * std::pow(v, -g.gamma) * std::expm1(-g.gamma * std::log1p(dv / v));
}

} // namespace vsw
