#include "scheme.hpp"

#include "vsw/errors.hpp"
#include "vsw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vsw::scheme {

namespace {

const double kGamma = 1.0 - 1.0 / std::sqrt(2.0);

struct Line {
    bool periodic = false;
    const EdgeFeed* left = nullptr;
    const EdgeFeed* right = nullptr;
};

void check_positive(std::span<const double> v, const char* where) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) {
            throw BlowUp(std::string(where) + ": specific volume " + std::to_string(v[i]) +
                         " at node " + std::to_string(i) + " of " + std::to_string(v.size()));
        }
    }
}

// Face coefficients a_{j+1/2} = stress(mean v); face j sits between j and j+1.
std::vector<double> face_coeffs(const GasParams& g, const std::vector<double>& v, bool periodic) {
    const std::size_t n = v.size();
    const std::size_t nf = periodic ? n : n - 1;
    std::vector<double> a(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        const std::size_t k = (j + 1 == n) ? 0 : j + 1;
        a[j] = detail::fast_stress(g, 0.5 * (v[j] + v[k]));
    }
    return a;
}

void apply_L(const std::vector<double>& a, const std::vector<double>& w, double idx2, bool periodic,
             std::vector<double>& out) {
    const std::size_t n = w.size();
    out.assign(n, 0.0);
    if (periodic) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jm = j == 0 ? n - 1 : j - 1;
            const std::size_t jp = j + 1 == n ? 0 : j + 1;
            out[j] = (a[j] * (w[jp] - w[j]) - a[jm] * (w[j] - w[jm])) * idx2;
        }
    } else {
        for (std::size_t j = 1; j + 1 < n; ++j)
            out[j] = (a[j] * (w[j + 1] - w[j]) - a[j - 1] * (w[j] - w[j - 1])) * idx2;
    }
}

double edge_visc(const EdgeFeed& e, int stage) {
    if (e.kind == EdgeKind::wall) return 0.0;
    return e.trace->visc_u[stage][e.index];
}

// Solves (I - c L) k = rhs on the free nodes; bounded lines take the edge
// values of k as given.
void implicit_solve(const std::vector<double>& a, double c, double idx2, const Line& line,
                    std::vector<double>& rhs, double k_left, double k_right) {
    const std::size_t n = rhs.size();
    if (line.periodic) {
        std::vector<double> sub(n), diag(n), sup(n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jm = j == 0 ? n - 1 : j - 1;
            sub[j] = -c * a[jm] * idx2;
            sup[j] = -c * a[j] * idx2;
            diag[j] = 1.0 + c * (a[jm] + a[j]) * idx2;
        }
        num::solve_cyclic_tridiagonal(sub, diag, sup, rhs);
        return;
    }
    const std::size_t m = n - 2;
    std::vector<double> sub(m), diag(m), sup(m), r(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + 1;
        sub[i] = -c * a[j - 1] * idx2;
        sup[i] = -c * a[j] * idx2;
        diag[i] = 1.0 + c * (a[j - 1] + a[j]) * idx2;
        r[i] = rhs[j];
    }
    r[0] -= sub[0] * k_left;
    r[m - 1] -= sup[m - 1] * k_right;
    num::solve_tridiagonal(sub, diag, sup, r);
    rhs[0] = k_left;
    rhs[n - 1] = k_right;
    for (std::size_t i = 0; i < m; ++i) rhs[i + 1] = r[i];
}

double face_flux(const std::vector<double>& a, const std::vector<double>& w, double idx) {
    const std::size_t n = w.size();
    return (a[n - 2] * (w[n - 1] - w[n - 2]) - a[0] * (w[1] - w[0])) * idx;
}

void viscous_half(const GasParams& g, double dx, double h, const std::vector<double>& v,
                  std::vector<double>& u, const Line& line, int stage0, StageTrace* trace,
                  FluxAudit* audit) {
    const std::size_t n = u.size();
    const double idx2 = 1.0 / (dx * dx);
    const auto a = face_coeffs(g, v, line.periodic);
    const double c = kGamma * h;

    std::vector<double> k1, k2, w(n), u1(n);
    apply_L(a, u, idx2, line.periodic, k1);
    double kl = 0.0, kr = 0.0;
    if (!line.periodic) {
        kl = edge_visc(*line.left, stage0);
        kr = edge_visc(*line.right, stage0);
    }
    implicit_solve(a, c, idx2, line, k1, kl, kr);
    for (std::size_t j = 0; j < n; ++j) u1[j] = u[j] + (1.0 - kGamma) * h * k1[j];
    if (audit) {
        for (std::size_t j = 0; j < n; ++j) w[j] = u[j] + c * k1[j];
        audit->momentum += (1.0 - kGamma) * h * face_flux(a, w, 1.0 / dx);
    }

    apply_L(a, u1, idx2, line.periodic, k2);
    if (!line.periodic) {
        kl = edge_visc(*line.left, stage0 + 1);
        kr = edge_visc(*line.right, stage0 + 1);
    }
    implicit_solve(a, c, idx2, line, k2, kl, kr);
    for (std::size_t j = 0; j < n; ++j) u[j] = u1[j] + c * k2[j];
    if (audit) {
        for (std::size_t j = 0; j < n; ++j) w[j] = u1[j] + c * k2[j];
        audit->momentum += c * face_flux(a, w, 1.0 / dx);
    }
    if (trace) {
        trace->visc_u[stage0] = std::move(k1);
        trace->visc_u[stage0 + 1] = std::move(k2);
    }
}

void hyperbolic_rhs(const GasParams& g, double dx, const std::vector<double>& v,
                    const std::vector<double>& u, const Line& line, int stage,
                    std::vector<double>& dv, std::vector<double>& du) {
    const std::size_t n = v.size();
    const double i2dx = 1.0 / (2.0 * dx);
    dv.resize(n);
    du.resize(n);
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = detail::fast_pressure(g, v[j]);
    if (line.periodic) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t jm = j == 0 ? n - 1 : j - 1;
            const std::size_t jp = j + 1 == n ? 0 : j + 1;
            dv[j] = (u[jp] - u[jm]) * i2dx;
            du[j] = -(p[jp] - p[jm]) * i2dx;
        }
        return;
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        dv[j] = (u[j + 1] - u[j - 1]) * i2dx;
        du[j] = -(p[j + 1] - p[j - 1]) * i2dx;
    }
    if (line.left->kind == EdgeKind::wall) {
        dv[0] = (4.0 * u[1] - u[2] - 3.0 * u[0]) * i2dx;
        du[0] = 0.0;
    } else {
        dv[0] = line.left->trace->hyp_v[stage][line.left->index];
        du[0] = line.left->trace->hyp_u[stage][line.left->index];
    }
    dv[n - 1] = line.right->trace->hyp_v[stage][line.right->index];
    du[n - 1] = line.right->trace->hyp_u[stage][line.right->index];
}

void hyperbolic_step(const GasParams& g, double dx, double dt, std::vector<double>& v,
                     std::vector<double>& u, const Line& line, StageTrace* trace,
                     FluxAudit* audit) {
    const std::size_t n = v.size();
    std::array<std::vector<double>, 4> kv, ku;
    std::vector<double> ws_v(n), ws_u(n);
    static constexpr double stage_c[4] = {0.0, 0.5, 0.5, 1.0};
    static constexpr double weight[4] = {1.0, 2.0, 2.0, 1.0};
    for (int s = 0; s < 4; ++s) {
        const std::vector<double>* sv = &v;
        const std::vector<double>* su = &u;
        if (s > 0) {
            const double c = stage_c[s] * dt;
            for (std::size_t j = 0; j < n; ++j) {
                ws_v[j] = v[j] + c * kv[s - 1][j];
                ws_u[j] = u[j] + c * ku[s - 1][j];
            }
            check_positive(ws_v, "hyperbolic stage");
            sv = &ws_v;
            su = &ws_u;
        }
        hyperbolic_rhs(g, dx, *sv, *su, line, s, kv[s], ku[s]);
        if (audit) {
            const auto& uu = *su;
            double pl0 = detail::fast_pressure(g, (*sv)[0]), pl1 = detail::fast_pressure(g, (*sv)[1]);
            double pr0 = detail::fast_pressure(g, (*sv)[n - 1]), pr1 = detail::fast_pressure(g, (*sv)[n - 2]);
            const double w = weight[s] * dt / 6.0;
            audit->mass += w * 0.5 * ((uu[n - 1] + uu[n - 2]) - (uu[0] + uu[1]));
            audit->momentum -= w * 0.5 * ((pr0 + pr1) - (pl0 + pl1));
        }
    }
    const double d6 = dt / 6.0;
    for (std::size_t j = 0; j < n; ++j) {
        v[j] += d6 * (kv[0][j] + 2.0 * kv[1][j] + 2.0 * kv[2][j] + kv[3][j]);
        u[j] += d6 * (ku[0][j] + 2.0 * ku[1][j] + 2.0 * ku[2][j] + ku[3][j]);
    }
    check_positive(v, "hyperbolic update");
    if (trace) {
        trace->hyp_v = std::move(kv);
        trace->hyp_u = std::move(ku);
    }
}

void split_step(const GasParams& g, double dx, double dt, std::vector<double>& v,
                std::vector<double>& u, const Line& line, StageTrace* trace, FluxAudit* audit) {
    viscous_half(g, dx, 0.5 * dt, v, u, line, 0, trace, audit);
    hyperbolic_step(g, dx, dt, v, u, line, trace, audit);
    viscous_half(g, dx, 0.5 * dt, v, u, line, 2, trace, audit);
}

} // namespace

double max_sound_speed(const GasParams& g, std::span<const double> v) {
    double vmin = v.empty() ? 1.0 : v[0];
    for (double x : v) vmin = std::min(vmin, x);
    if (!(vmin > 0.0)) throw BlowUp("non-positive specific volume in wave-speed estimate");
    return std::sqrt(g.a * g.gamma * std::pow(vmin, -g.gamma - 1.0));
}

double stable_dt(const GasParams& g, double dx, double cfl, std::span<const double> v) {
    return cfl * dx / max_sound_speed(g, v);
}

void step_periodic(const GasParams& g, double dx, double dt, std::vector<double>& v,
                   std::vector<double>& u, StageTrace* trace) {
    if (v.size() < 3) throw ValidationError("periodic line needs at least 3 nodes");
    Line line;
    line.periodic = true;
    split_step(g, dx, dt, v, u, line, trace, nullptr);
}

void step_line(const GasParams& g, double dx, double dt, std::vector<double>& v,
               std::vector<double>& u, const EdgeFeed& left, const EdgeFeed& right,
               FluxAudit* audit) {
    if (v.size() < 4) throw ValidationError("bounded line needs at least 4 nodes");
    if (right.kind != EdgeKind::driven || !right.trace) throw ValidationError("right edge must be driven");
    if (left.kind == EdgeKind::driven && !left.trace) throw ValidationError("driven left edge needs a trace");
    if (left.kind == EdgeKind::wall) u[0] = 0.0;
    Line line;
    line.left = &left;
    line.right = &right;
    split_step(g, dx, dt, v, u, line, nullptr, audit);
}

} // namespace vsw::scheme
