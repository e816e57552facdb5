#include "vsw/numerics.hpp"

#include "vsw/errors.hpp"

#include <algorithm>
#include <cmath>

namespace vsw::num {

double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    double sum = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
    return sum * dx;
}

std::vector<double> cumulative_left(std::span<const double> f, double dx) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * dx * (f[i - 1] + f[i]);
    return out;
}

std::vector<double> cumulative_left_corrected(std::span<const double> f, double dx) {
    auto out = cumulative_left(f, dx);
    const std::size_t n = f.size();
    if (n < 5) return out;
    // Fourth-order slopes; one-sided in the two edge nodes.
    auto slope = [&](std::size_t i) {
        if (i == 0) return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * dx);
        if (i == 1) return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * dx);
        if (i == n - 2)
            return (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * dx);
        if (i == n - 1)
            return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * dx);
        return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * dx);
    };
    const double d0 = slope(0);
    const double c = dx * dx / 12.0;
    for (std::size_t i = 1; i < n; ++i) out[i] -= c * (slope(i) - d0);
    if (n < 7) return out;
    // Next Gregory term with a fourth-order third derivative; within three
    // nodes of an end the nearest interior value is reused.
    auto third = [&](std::size_t i) {
        i = std::clamp<std::size_t>(i, 3, n - 4);
        return (-f[i + 3] + 8.0 * f[i + 2] - 13.0 * f[i + 1] + 13.0 * f[i - 1] - 8.0 * f[i - 2] + f[i - 3]) /
               (8.0 * dx * dx * dx);
    };
    const double t0 = third(0);
    const double c3 = dx * dx * dx * dx / 720.0;
    for (std::size_t i = 1; i < n; ++i) out[i] += c3 * (third(i) - t0);
    return out;
}

std::vector<double> cumulative_right(std::span<const double> f, double dx) {
    std::vector<double> out(f.size(), 0.0);
    if (f.empty()) return out;
    for (std::size_t i = f.size() - 1; i-- > 0;) out[i] = out[i + 1] - 0.5 * dx * (f[i] + f[i + 1]);
    return out;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    // Pre-split into panels so that oscillatory integrands are not
    // mistaken for smooth ones by the first coarse estimate.
    const int panels = 16;
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * w;
        const double hi = (k == panels - 1) ? b : lo + w;
        const double fa = f(lo);
        const double fb = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_step(f, lo, hi, fa, fm, fb, whole, tol / panels, max_depth);
    }
    return total;
}

std::vector<double> derivative(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return d;
}

std::vector<double> second_derivative(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 4) return d;
    const double h2 = dx * dx;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return d;
}

static double sq_integral(std::span<const double> f, double dx) {
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
    return trapezoid(sq, dx);
}

double l2_norm(std::span<const double> f, double dx) { return std::sqrt(sq_integral(f, dx)); }

double h1_norm(std::span<const double> f, double dx) {
    const auto d1 = derivative(f, dx);
    return std::sqrt(sq_integral(f, dx) + sq_integral(d1, dx));
}

double h2_norm(std::span<const double> f, double dx) {
    const auto d1 = derivative(f, dx);
    const auto d2 = second_derivative(f, dx);
    return std::sqrt(sq_integral(f, dx) + sq_integral(d1, dx) + sq_integral(d2, dx));
}

double max_abs(std::span<const double> f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    LineFit fit;
    const std::size_t n = std::min(x.size(), y.size());
    fit.count = n;
    if (n < 2) return fit;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

RateFit fit_exponential_decay(std::span<const double> t, std::span<const double> y,
                              double keep_fraction, double floor) {
    const std::size_t n = std::min(t.size(), y.size());
    if (n < 3) throw FitUnavailable("decay fit needs at least three samples");
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (y[i] > y[peak]) peak = i;
    if (!(y[peak] > 0.0) || !std::isfinite(y[peak]))
        throw FitUnavailable("decay fit: series is identically zero");
    // A series that bottoms out before the end has hit a noise floor; stop a
    // decade above it.
    std::size_t low = peak;
    for (std::size_t i = peak + 1; i < n; ++i)
        if (y[i] <= y[low]) low = i;
    double cutoff = floor * y[peak];
    if (low + 1 < n) cutoff = std::max(cutoff, 10.0 * y[low]);
    std::size_t last = peak;
    for (std::size_t i = peak + 1; i < n; ++i) {
        if (!(y[i] > cutoff)) break;
        last = i;
    }
    if (last < peak + 2) throw FitUnavailable("decay fit: empty decaying window");
    const double t0 = t[peak] + (1.0 - keep_fraction) * (t[last] - t[peak]);
    std::vector<double> xs, ys;
    for (std::size_t i = peak; i <= last; ++i) {
        if (t[i] < t0) continue;
        xs.push_back(t[i]);
        ys.push_back(std::log(y[i]));
    }
    if (xs.size() < 2) throw FitUnavailable("decay fit: window too short");
    const LineFit lf = least_squares(xs, ys);
    RateFit out;
    out.rate = -lf.slope;
    out.prefactor = std::exp(lf.intercept);
    out.first = peak;
    out.last = last;
    if (!(out.rate > 0.0)) throw FitUnavailable("decay fit: series is not decaying");
    return out;
}

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0) return;
    std::vector<double> c(n);
    double beta = diag[0];
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        c[i] = sup[i - 1] / beta;
        beta = diag[i] - sub[i] * c[i];
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i + 1] * rhs[i + 1];
}

void solve_cyclic_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                              std::span<const double> sup, std::span<double> rhs) {
    const std::size_t n = diag.size();
    if (n < 3) throw NumericalError("cyclic tridiagonal solve needs n >= 3");
    const double corner_low = sub[0];      // row 0, column n-1
    const double corner_high = sup[n - 1]; // row n-1, column 0
    const double gamma = -diag[0];
    std::vector<double> bb(diag.begin(), diag.end());
    bb[0] = diag[0] - gamma;
    bb[n - 1] = diag[n - 1] - corner_low * corner_high / gamma;
    solve_tridiagonal(sub, bb, sup, rhs);
    std::vector<double> zz(n, 0.0);
    zz[0] = gamma;
    zz[n - 1] = corner_high;
    solve_tridiagonal(sub, bb, sup, zz);
    const double fact = (rhs[0] + corner_low * rhs[n - 1] / gamma) /
                        (1.0 + zz[0] + corner_low * zz[n - 1] / gamma);
    for (std::size_t i = 0; i < n; ++i) rhs[i] -= fact * zz[i];
}

} // namespace vsw::num
