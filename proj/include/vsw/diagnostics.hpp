#pragma once

/// @file diagnostics.hpp
/// @brief Anti-derivative perturbations, effective velocities, error terms,
/// source norms, nonlinear terms and the sup-norm convergence metric.

#include "vsw/ansatz.hpp"
#include "vsw/evolve.hpp"
#include "vsw/gas.hpp"
#include "vsw/profile.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace vsw {

/// Running integral from the left edge (phi-type anti-derivative); trapezoid
/// with end corrections, so interior values are sixth order.
std::vector<double> antiderivative(std::span<const double> dev, double dx);

/// -int_x^end dev (A0/B0-type anti-derivative anchored at the right edge).
std::vector<double> antiderivative_right(std::span<const double> dev, double dx);

/// True when the deviation has not decayed below tol at the anchoring edge.
bool edge_contaminated(std::span<const double> dev, double tol = 1e-10, bool left_anchor = true);

struct PerturbationProfile {
    Grid grid;
    std::vector<double> phi, psi, Phi;
    double phi_l2 = 0.0, phi_h1 = 0.0, phi_h2 = 0.0;
    double psi_l2 = 0.0, psi_h1 = 0.0, psi_h2 = 0.0;
    double phix_l2 = 0.0, phixx_l2 = 0.0, psix_l2 = 0.0;
    double phix_inf = 0.0;
    double supdev_v = 0.0, supdev_u = 0.0;
    double phi_end = 0.0, psi_end = 0.0, Phi_end = 0.0;
    bool contaminated = false;
};

PerturbationProfile compute_perturbation(const Field& f, const AnsatzFields& ansatz,
                                         const GasParams& g);

/// h~ = u - v^-(alpha+1) v_x with centred differences.
std::vector<double> effective_velocity(const Field& f, const GasParams& g);

/// H = U - V^-(alpha+1) V_x on a grid.
std::vector<double> ansatz_effective(const AnsatzFields& a, const Grid& grid, const GasParams& g);

struct NonlinearTerms {
    std::vector<double> f;     ///< -p'(V) - (alpha+1) U_x / V^(alpha+2)
    std::vector<double> J;
    std::vector<double> G;
    std::vector<double> p_rel; ///< p(v) - p(V) - p'(V) phi_x
    double min_f = 0.0;
    double max_prel_ratio = 0.0; ///< max |p_rel| / phi_x^2 where phi_x is resolvable
    double max_J = 0.0;
    double max_G = 0.0;
};

NonlinearTerms nonlinear_terms(const Field& f, const AnsatzFields& ansatz, const GasParams& g);

struct SourceNorms {
    double F1_h2 = 0.0;
    double F2_h1 = 0.0;
};

SourceNorms source_norms(const SourceEval& src);

struct ErrorTerms {
    std::vector<double> q, z;
    double q_l2 = 0.0, z_l2 = 0.0, q_h2 = 0.0, z_h2 = 0.0;
    double q_inf = 0.0, z_inf = 0.0;
};

ErrorTerms error_terms(const AnsatzFields& ansatz, const CompositeWave& wave, const Grid& grid);

struct ConvergenceSample {
    double t = 0.0;
    double sup_metric = 0.0;   ///< sup_{x>=0} |(v,u) - (V2,U2)(x - st - beta)|
    double sup_field_ansatz = 0.0; ///< sup_{x>=0} |v - V|
    double q_inf = 0.0;        ///< sup_{x>=0} |V - V~|
    double mirror_tail = 0.0;  ///< sup_{x>=0} |V2(-x - st - beta) - v_-|
};

/// Metric on the x >= 0 restriction; ansatz terms are filled when given.
ConvergenceSample convergence_metric(const Field& half, const ProfileTable& profile, double beta,
                                     const AnsatzFields* ansatz = nullptr);

struct DiagnosticsRow {
    double t = 0.0;
    double sup_metric = 0.0;
    double phi_l2 = 0.0;
    double phi_h2 = 0.0;
    double psi_l2 = 0.0;
    double F1_norm = 0.0;
    double F2_norm = 0.0;
    double q_l2 = 0.0;
    double z_l2 = 0.0;
};

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRow>& rows);

} // namespace vsw
