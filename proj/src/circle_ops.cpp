#include "mrh/circle_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mrh {

namespace {
constexpr double kPi = std::numbers::pi;
}

GridFunction hilbert_transform(const GridFunction& u) {
    const int n = u.size();
    std::vector<cd> bins = dft_bins(u);
    const cd mi(0.0, -1.0);
    const cd pi_(0.0, 1.0);
    bins[0] = cd(0.0, 0.0);
    for (int m = 1; m < n / 2; ++m) bins[m] *= mi;
    bins[n / 2] = cd(0.0, 0.0);
    for (int m = n / 2 + 1; m < n; ++m) bins[m] *= pi_;
    return idft_bins(n, bins);
}

AnalyticProjection analytic_projection(const GridFunction& u) {
    const int n = u.size();
    std::vector<cd> bins = dft_bins(u);
    double total = 0.0;
    double kept = 0.0;
    for (int m = 0; m < n; ++m) {
        const double e = std::norm(bins[m] / static_cast<double>(n));
        total += e;
        if (m < n / 2) kept += e;
    }
    std::vector<cd> coeffs(static_cast<size_t>(n / 2));
    for (int m = 0; m < n / 2; ++m) coeffs[m] = bins[m] / static_cast<double>(n);
    AnalyticProjection out;
    out.fn = AnalyticFunction(std::move(coeffs));
    out.total_energy = 2.0 * kPi * total;
    out.discarded_energy = 2.0 * kPi * (total - kept);
    return out;
}

DoubledWinding winding_number(const GridFunction& u, bool allow_half) {
    const int n = u.size();
    double min_mod = u[0].real() * u[0].real() + u[0].imag() * u[0].imag();
    for (int k = 1; k < n; ++k) min_mod = std::min(min_mod, std::norm(u[k]));
    if (!(min_mod > 0.0)) throw std::runtime_error("winding undefined: function vanishes on the grid");

    double total = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
        const double d = std::arg(u[k + 1] / u[k]);
        if (!(std::abs(d) < kPi / 2.0))
            throw std::runtime_error("winding under-resolved: step of pi/2 or more between nodes");
        total += d;
    }

    const double r_plus = std::arg(u[0] / u[n - 1]);
    DoubledWinding w;
    if (std::abs(r_plus) < kPi / 2.0) {
        total += r_plus;
        w.two_n = 2 * static_cast<int>(std::llround(total / (2.0 * kPi)));
        w.half = false;
        return w;
    }
    if (!allow_half)
        throw std::runtime_error("winding under-resolved: closing step of pi/2 or more between nodes");
    const double r_minus = std::arg(-u[0] / u[n - 1]);
    if (!(std::abs(r_minus) < kPi / 2.0))
        throw std::runtime_error("winding under-resolved: closing step of pi/2 or more between nodes");
    total += r_minus;
    w.two_n = static_cast<int>(std::llround(total / kPi));
    if (w.two_n % 2 == 0)
        throw std::runtime_error("winding inconsistent: sign flip without half-integer closure");
    w.half = true;
    return w;
}

double holder_estimate(const GridFunction& u, int center, int radius) {
    const int n = u.size();
    if (radius < 2 || radius > n / 4) throw std::invalid_argument("holder radius out of range");
    const int c = ((center % n) + n) % n;

    std::vector<double> scales;
    std::vector<double> omegas;
    double running = 0.0;
    int next_dyadic = 1;
    for (int m = 1; m <= radius; ++m) {
        const double dp = std::abs(u[(c + m) % n] - u[c]);
        const double dm = std::abs(u[(c - m % n + n) % n] - u[c]);
        running = std::max(running, std::max(dp, dm));
        if (m == next_dyadic) {
            scales.push_back(m * 2.0 * kPi / n);
            omegas.push_back(running);
            next_dyadic *= 2;
        }
    }
    bool all_flat = true;
    for (double w : omegas)
        if (w > 1e-14) all_flat = false;
    if (all_flat) return 1.5;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < scales.size(); ++i) {
        if (omegas[i] <= 1e-300) continue;
        const double x = std::log(scales[i]);
        const double y = std::log(omegas[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 1.5;
    const double denom = cnt * sxx - sx * sx;
    const double slope = (cnt * sxy - sx * sy) / denom;
    return std::clamp(slope, 0.0, 1.5);
}

double lp_norm(const GridFunction& u, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm requires p > 0");
    const int n = u.size();
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::pow(std::abs(u[k]), p);
    return std::pow(s * 2.0 * kPi / n, 1.0 / p);
}

}  // namespace mrh
