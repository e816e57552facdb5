#include "vsw/spectral.hpp"

#include "vsw/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace vsw::spectral {

namespace {

struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex plan_mutex;

const Plans& plans_for(std::size_t n) {
    static std::map<std::size_t, Plans> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> in(n);
    std::vector<std::complex<double>> out(n / 2 + 1);
    auto* cin = reinterpret_cast<fftw_complex*>(out.data());
    Plans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), cin, flags);
    p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), cin, in.data(), flags);
    if (!p.r2c || !p.c2r) throw NumericalError("FFTW planning failed");
    return cache.emplace(n, p).first->second;
}

} // namespace

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<std::complex<double>> forward(std::span<const double> f) {
    const std::size_t n = f.size();
    std::vector<double> in(f.begin(), f.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(plans_for(n).r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse(std::span<const std::complex<double>> coeffs, std::size_t n) {
    // c2r destroys its input.
    std::vector<std::complex<double>> in(coeffs.begin(), coeffs.end());
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plans_for(n).c2r, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    for (double& x : out) x /= static_cast<double>(n);
    return out;
}

std::vector<double> derivative(std::span<const double> f, double period, int order) {
    const std::size_t n = f.size();
    auto c = forward(f);
    const double k0 = 2.0 * std::numbers::pi / period;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double kappa = k0 * static_cast<double>(k);
        std::complex<double> factor = std::pow(std::complex<double>(0.0, kappa), order);
        if (n % 2 == 0 && k == n / 2 && order % 2 == 1) factor = 0.0;
        c[k] *= factor;
    }
    return inverse(c, n);
}

double sobolev_norm(std::span<const double> f, double period, int k) {
    const std::size_t n = f.size();
    const auto c = forward(f);
    const double k0 = 2.0 * std::numbers::pi / period;
    double sum = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double kappa2 = std::pow(k0 * static_cast<double>(j), 2);
        double w = 0.0, kp = 1.0;
        for (int m = 0; m <= k; ++m) {
            w += kp;
            kp *= kappa2;
        }
        const bool self_conjugate = (j == 0) || (n % 2 == 0 && j == n / 2);
        sum += (self_conjugate ? 1.0 : 2.0) * w * std::norm(c[j]);
    }
    // Parseval: int |f|^2 = (period / n^2) sum_k |c_k|^2
    return std::sqrt(sum * period / (static_cast<double>(n) * static_cast<double>(n)));
}

} // namespace vsw::spectral
