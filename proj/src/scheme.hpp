#pragma once

// Shared space/time discretization for the periodic cells and the field.
//
// One step = viscous half-step, hyperbolic RK4 step, viscous half-step.
// The viscous part (u_t = (a(v) u_x)_x with v frozen) is advanced by a
// two-stage L-stable SDIRK scheme; the hyperbolic part (v_t = u_x,
// u_t = -p(v)_x) by classical RK4. Both use second-order central
// differences in divergence form.

#include "vsw/gas.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace vsw::scheme {

/// Per-stage time derivatives of a periodic line, reused as boundary data
/// for a field whose edge nodes coincide with cell nodes.
struct StageTrace {
    std::array<std::vector<double>, 4> visc_u;
    std::array<std::vector<double>, 4> hyp_v;
    std::array<std::vector<double>, 4> hyp_u;
};

enum class EdgeKind { driven, wall };

struct EdgeFeed {
    EdgeKind kind = EdgeKind::driven;
    const StageTrace* trace = nullptr;
    std::size_t index = 0;
};

/// Time-integrated fluxes through the faces bounding nodes 1..N-2.
struct FluxAudit {
    double mass = 0.0;
    double momentum = 0.0;
};

double max_sound_speed(const GasParams& g, std::span<const double> v);

double stable_dt(const GasParams& g, double dx, double cfl, std::span<const double> v);

void step_periodic(const GasParams& g, double dx, double dt, std::vector<double>& v,
                   std::vector<double>& u, StageTrace* trace);

/// Bounded line; edge nodes follow the feeds. A wall edge is only allowed
/// on the left (u = 0 there, v by a one-sided difference).
void step_line(const GasParams& g, double dx, double dt, std::vector<double>& v,
               std::vector<double>& u, const EdgeFeed& left, const EdgeFeed& right,
               FluxAudit* audit);

} // namespace vsw::scheme
