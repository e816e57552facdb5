#include "vsw/diagnostics.hpp"

#include "vsw/io.hpp"
#include "vsw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace vsw {

std::vector<double> antiderivative(std::span<const double> dev, double dx) {
    return num::cumulative_left_corrected(dev, dx);
}

std::vector<double> antiderivative_right(std::span<const double> dev, double dx) {
    auto F = num::cumulative_left_corrected(dev, dx);
    const double total = F.empty() ? 0.0 : F.back();
    for (double& x : F) x -= total;
    return F;
}

bool edge_contaminated(std::span<const double> dev, double tol, bool left_anchor) {
    if (dev.empty()) return false;
    return std::abs(left_anchor ? dev.front() : dev.back()) > tol;
}

std::vector<double> effective_velocity(const Field& f, const GasParams& g) {
    const auto vx = num::derivative(f.v, f.dx);
    std::vector<double> h(f.n());
    for (std::size_t i = 0; i < f.n(); ++i) h[i] = f.u[i] - stress_coeff(g, f.v[i]) * vx[i];
    return h;
}

std::vector<double> ansatz_effective(const AnsatzFields& a, const Grid& grid, const GasParams& g) {
    std::vector<double> h(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        h[i] = a.U(x) - stress_coeff(g, a.V(x)) * a.Vx(x);
    }
    return h;
}

PerturbationProfile compute_perturbation(const Field& f, const AnsatzFields& a, const GasParams& g) {
    PerturbationProfile p;
    p.grid = Grid{f.x0, f.dx, f.n()};
    const std::size_t n = f.n();
    std::vector<double> dv(n), du(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = f.x(i);
        dv[i] = f.v[i] - a.V(x);
        du[i] = f.u[i] - a.U(x);
    }
    p.contaminated = edge_contaminated(dv) || edge_contaminated(du);
    p.phi = antiderivative(dv, f.dx);
    p.psi = antiderivative(du, f.dx);
    const auto ht = effective_velocity(f, g);
    const auto H = ansatz_effective(a, p.grid, g);
    std::vector<double> dh(n);
    for (std::size_t i = 0; i < n; ++i) dh[i] = ht[i] - H[i];
    p.Phi = antiderivative(dh, f.dx);

    p.phi_l2 = num::l2_norm(p.phi, f.dx);
    p.phi_h1 = num::h1_norm(p.phi, f.dx);
    p.phi_h2 = num::h2_norm(p.phi, f.dx);
    p.psi_l2 = num::l2_norm(p.psi, f.dx);
    p.psi_h1 = num::h1_norm(p.psi, f.dx);
    p.psi_h2 = num::h2_norm(p.psi, f.dx);
    p.phix_l2 = num::l2_norm(dv, f.dx);
    p.phixx_l2 = num::l2_norm(num::derivative(dv, f.dx), f.dx);
    p.psix_l2 = num::l2_norm(du, f.dx);
    p.phix_inf = num::max_abs(dv);
    p.supdev_v = p.phix_inf;
    p.supdev_u = num::max_abs(du);
    p.phi_end = p.phi.back();
    p.psi_end = p.psi.back();
    p.Phi_end = p.Phi.back();
    return p;
}

NonlinearTerms nonlinear_terms(const Field& fld, const AnsatzFields& a, const GasParams& g) {
    const std::size_t n = fld.n();
    const double a1 = g.alpha + 1.0;
    NonlinearTerms t;
    t.f.resize(n);
    t.J.resize(n);
    t.G.resize(n);
    t.p_rel.resize(n);
    std::vector<double> phix(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = fld.x(i);
        phix[i] = fld.v[i] - a.V(x);
    }
    const auto vx = num::derivative(fld.v, fld.dx);
    const auto ux = num::derivative(fld.u, fld.dx);
    t.min_f = 1e300;
    const double resolvable = 1e-6;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = fld.x(i);
        const double V = a.V(x);
        const double Vx = a.Vx(x);
        const double Ux = a.Ux(x);
        const double v = fld.v[i];
        const double dp = dpressure(g, V);
        // phi_xx and psi_xx pair the differenced field with the exact ansatz slope.
        const double phixx = vx[i] - Vx;
        const double psixx = ux[i] - Ux;
        t.f[i] = -dp - a1 * Ux / std::pow(V, a1 + 1.0);
        t.p_rel[i] = pressure_increment(g, V, v - V) - dp * phix[i];
        t.J[i] = ux[i] / std::pow(v, a1) - Ux / std::pow(V, a1) - psixx / std::pow(V, a1) +
                 a1 * Ux * phix[i] / std::pow(V, a1 + 1.0) - t.p_rel[i];
        t.G[i] = vx[i] / std::pow(v, a1) - Vx / std::pow(V, a1) - phixx / std::pow(V, a1);
        t.min_f = std::min(t.min_f, t.f[i]);
        t.max_J = std::max(t.max_J, std::abs(t.J[i]));
        t.max_G = std::max(t.max_G, std::abs(t.G[i]));
        if (std::abs(phix[i]) > resolvable)
            t.max_prel_ratio = std::max(t.max_prel_ratio, std::abs(t.p_rel[i]) / (phix[i] * phix[i]));
    }
    return t;
}

SourceNorms source_norms(const SourceEval& src) {
    SourceNorms s;
    s.F1_h2 = num::h2_norm(src.F1, src.grid.dx);
    s.F2_h1 = num::h1_norm(src.F2, src.grid.dx);
    return s;
}

ErrorTerms error_terms(const AnsatzFields& a, const CompositeWave& w, const Grid& grid) {
    ErrorTerms e;
    e.q.resize(grid.n);
    e.z.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        e.q[i] = a.V(x) - w.V(x, a.t());
        e.z[i] = a.U(x) - w.U(x, a.t());
    }
    e.q_l2 = num::l2_norm(e.q, grid.dx);
    e.z_l2 = num::l2_norm(e.z, grid.dx);
    e.q_h2 = num::h2_norm(e.q, grid.dx);
    e.z_h2 = num::h2_norm(e.z, grid.dx);
    e.q_inf = num::max_abs(e.q);
    e.z_inf = num::max_abs(e.z);
    return e;
}

ConvergenceSample convergence_metric(const Field& half, const ProfileTable& p, double beta,
                                     const AnsatzFields* a) {
    ConvergenceSample c;
    c.t = half.t;
    const double shift = p.shock().s * half.t + beta;
    const CompositeWave wave(p, beta);
    for (std::size_t i = 0; i < half.n(); ++i) {
        const double x = half.x(i);
        if (x < 0.0) continue;
        const double dv = std::abs(half.v[i] - p.V(x - shift));
        const double du = std::abs(half.u[i] - p.U(x - shift));
        c.sup_metric = std::max(c.sup_metric, std::max(dv, du));
        c.mirror_tail = std::max(c.mirror_tail, p.dev_minus(-x - shift));
        if (a) {
            c.sup_field_ansatz = std::max(c.sup_field_ansatz, std::abs(half.v[i] - a->V(x)));
            c.q_inf = std::max(c.q_inf, std::abs(a->V(x) - wave.V(x, half.t)));
        }
    }
    return c;
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRow>& rows) {
    io::CsvWriter csv(os, {"t", "sup_metric", "phi_l2", "phi_h2", "psi_l2", "F1_norm", "F2_norm", "q_l2", "z_l2"});
    for (const auto& r : rows)
        csv.row({r.t, r.sup_metric, r.phi_l2, r.phi_h2, r.psi_l2, r.F1_norm, r.F2_norm, r.q_l2, r.z_l2});
}

} // namespace vsw
