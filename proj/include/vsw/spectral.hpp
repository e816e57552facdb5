#pragma once

/// @file spectral.hpp
/// @brief Thin FFTW wrapper for real periodic data on a uniform cell.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vsw::spectral {

/// Unnormalized forward transform: n/2+1 coefficients sum_j f_j e^{-2 pi i k j / n}.
std::vector<std::complex<double>> forward(std::span<const double> f);

/// Inverse of forward() including the 1/n factor.
std::vector<double> inverse(std::span<const std::complex<double>> coeffs, std::size_t n);

/// Derivative of the given order of a periodic sample on a cell of length period.
/// The Nyquist mode is dropped for odd orders.
std::vector<double> derivative(std::span<const double> f, double period, int order);

/// H^k norm over the cell via Parseval, weights sum_{j<=k} kappa^{2j}.
double sobolev_norm(std::span<const double> f, double period, int k);

bool is_power_of_two(std::size_t n);

} // namespace vsw::spectral
