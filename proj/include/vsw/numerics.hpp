#pragma once

/// @file numerics.hpp
/// @brief Small numerical kernels shared by the modules: quadrature,
/// finite differences, least squares, banded solves.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vsw::num {

/// Composite trapezoid on a uniform grid.
double trapezoid(std::span<const double> f, double dx);

/// Running trapezoid integral from the left end (first entry 0).
std::vector<double> cumulative_left(std::span<const double> f, double dx);

/// Running trapezoid with Gregory end corrections (sixth order for smooth
/// integrands that are flat near the ends).
std::vector<double> cumulative_left_corrected(std::span<const double> f, double dx);

/// Running integral anchored at the right end: out[i] = -int_{x_i}^{x_end} f.
std::vector<double> cumulative_right(std::span<const double> f, double dx);

/// Adaptive Simpson quadrature on [a, b] with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

/// First derivative, central in the interior, second-order one-sided at the ends.
std::vector<double> derivative(std::span<const double> f, double dx);

/// Second derivative, central in the interior, second-order one-sided at the ends.
std::vector<double> second_derivative(std::span<const double> f, double dx);

double l2_norm(std::span<const double> f, double dx);
double h1_norm(std::span<const double> f, double dx);
double h2_norm(std::span<const double> f, double dx);
double max_abs(std::span<const double> f);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t count = 0;
};

/// Ordinary least squares y = slope*x + intercept.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

/// Exponential rate fit on a decaying series. The window runs from the
/// peak to the last sample above floor*peak, or above ten times the minimum
/// when the series levels off before its end; the final
/// keep_fraction of that window is fitted in log space. rate > 0 means decay.
struct RateFit {
    double rate = 0.0;
    double prefactor = 0.0;
    std::size_t first = 0;
    std::size_t last = 0;
};
RateFit fit_exponential_decay(std::span<const double> t, std::span<const double> y,
                              double keep_fraction = 0.6, double floor = 1e-10);

/// Thomas algorithm; sub[0] and sup[n-1] are ignored. rhs is overwritten.
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs);

/// Periodic tridiagonal system: sub[0] couples row 0 to column n-1,
/// sup[n-1] couples row n-1 to column 0. rhs is overwritten.
void solve_cyclic_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                              std::span<const double> sup, std::span<double> rhs);

} // namespace vsw::num
