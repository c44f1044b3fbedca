#include "mrh/reduction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mrh/circle_ops.hpp"

namespace mrh {

namespace {
constexpr double kPi = std::numbers::pi;

// Mobius composition via the 2x2 coefficient matrices.
Mobius compose(const Mobius& f, const Mobius& g) {
    return Mobius{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c,
                  f.c * g.b + f.d * g.d};
}
}  // namespace

cd Mobius::apply(cd xi) const { return (a * xi + b) / (c * xi + d); }

Mobius normalize_arc(cd omega_plus, cd omega_minus) {
    if (std::abs(std::abs(omega_plus) - 1.0) > 1e-10 || std::abs(std::abs(omega_minus) - 1.0) > 1e-10)
        throw std::invalid_argument("arc endpoints must lie on the unit circle");
    if (std::abs(omega_plus - omega_minus) < 1e-10)
        throw std::invalid_argument("arc endpoints coincide");

    const double th_minus = std::arg(omega_minus);
    double th_plus = std::arg(omega_plus);
    while (th_plus <= th_minus) th_plus += 2.0 * kPi;
    const cd mid = std::polar(1.0, 0.5 * (th_minus + th_plus));

    // xi -> (xi - omega_minus)(mid - omega_plus) / ((xi - omega_plus)(mid - omega_minus))
    // sends (omega_minus, mid, omega_plus) to (0, 1, inf); same for the targets.
    const auto three_point = [](cd p, cd q, cd r) {
        return Mobius{q - r, -p * (q - r), q - p, -r * (q - p)};
    };
    const Mobius source = three_point(omega_minus, mid, omega_plus);
    const Mobius target = three_point(cd(-1, 0), cd(0, -1), cd(1, 0));
    return compose(target.inverse(), source);
}

GridFunction extend_symbol(const GridFunction& a) {
    const int n = a.size();
    const int half = n / 2;

    // Lower-arc walk runs k = n/2 .. n-1 and closes at node 0 (theta = 2pi).
    std::vector<double> mod(static_cast<size_t>(half) + 1), arg(static_cast<size_t>(half) + 1);
    for (int j = 0; j <= half; ++j) {
        const int k = (half + j) % n;
        const double m = std::abs(a[k]);
        if (m < 1e-12) throw std::invalid_argument("symbol vanishes on the linear arc");
        mod[j] = std::log(m);
        arg[j] = (j == 0) ? std::arg(a[k]) : arg[j - 1] + std::arg(a[k] / a[(half + j - 1) % n]);
    }

    const double h = 2.0 * kPi / n;
    // One-sided three-point slopes at the two ends of the lower-arc walk.
    const auto end_slopes = [&](const std::vector<double>& u, double& at_pi, double& at_2pi) {
        at_pi = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
        at_2pi = (3.0 * u[half] - 4.0 * u[half - 1] + u[half - 2]) / (2.0 * h);
    };
    double mod_dpi, mod_d2pi, arg_dpi, arg_d2pi;
    end_slopes(mod, mod_dpi, mod_d2pi);
    end_slopes(arg, arg_dpi, arg_d2pi);

    // Cubic Hermite over the gap theta in (0, pi): value and slope match the
    // node-0 end (theta = 2pi) at 0 and the node-n/2 end at pi.
    const auto hermite = [&](double v0, double d0, double v1, double d1, double theta) {
        const double x = theta / kPi;
        const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
        const double h10 = x * (1 - x) * (1 - x);
        const double h01 = x * x * (3 - 2 * x);
        const double h11 = x * x * (x - 1);
        return h00 * v0 + h10 * kPi * d0 + h01 * v1 + h11 * kPi * d1;
    };

    GridFunction out(n);
    for (int k = 0; k <= half; ++k) out[(half + k) % n] = a[(half + k) % n];
    for (int k = 1; k < half; ++k) {
        const double t = out.theta(k);
        const double m = hermite(mod[half], mod_d2pi, mod[0], mod_dpi, t);
        const double ph = hermite(arg[half], arg_d2pi, arg[0], arg_dpi, t);
        out[k] = std::polar(std::exp(m), ph);
    }
    return out;
}

SymbolFactorization factor_conjugate_symbol(const GridFunction& a_ext) {
    const int n = a_ext.size();
    const auto w = winding_number(a_ext, false);
    if (w.two_n != 0) throw std::invalid_argument("symbol winding must be zero before factoring");

    GridFunction alpha(n);
    double run = std::arg(std::conj(a_ext[0]));
    alpha[0] = run;
    for (int k = 1; k < n; ++k) {
        run += std::arg(std::conj(a_ext[k]) / std::conj(a_ext[k - 1]));
        alpha[k] = run;
    }
    const GridFunction halpha = hilbert_transform(alpha);

    SymbolFactorization out{GridFunction(n), AnalyticFunction(), GridFunction(n)};
    for (int k = 0; k < n; ++k) {
        out.h_grid[k] = cd(-halpha[k].real(), alpha[k].real());
        out.r[k] = std::abs(a_ext[k]) * std::exp(halpha[k].real());
    }
    out.h = analytic_projection(out.h_grid).fn;
    return out;
}

HalfDiskValues half_disk_map(cd xi) {
    if (std::abs(xi) > 1.0 + 1e-10) throw std::invalid_argument("half-disk map needs |xi| <= 1");
    const auto finish = [](cd s) {
        HalfDiskValues v;
        v.Psi = (s - 1.0) / (s + 1.0);
        v.psi = v.Psi * (3.0 - v.Psi * v.Psi) * 0.5;
        return v;
    };
    if (std::abs(xi - cd(1.0, 0.0)) < 1e-14) return HalfDiskValues{cd(1, 0), cd(1, 0)};

    if (std::abs(std::abs(xi) - 1.0) < 1e-12) {
        // On the circle the intermediate i(1+xi)/(1-xi) is -cot(theta/2),
        // exactly real; route through it to keep psi real on the lower arc.
        const double theta = std::arg(xi);
        const double om = -std::cos(theta / 2.0) / std::sin(theta / 2.0);
        const cd s = om >= 0.0 ? cd(std::sqrt(om), 0.0) : cd(0.0, std::sqrt(-om));
        return finish(s);
    }
    const cd om = cd(0, 1) * (1.0 + xi) / (1.0 - xi);
    return finish(std::sqrt(om));
}

GridFunction psi_grid(int n) {
    GridFunction g(n);
    for (int k = 0; k < n; ++k) g[k] = half_disk_map(std::polar(1.0, g.theta(k))).psi;
    return g;
}

int refined_grid(int n) {
    int nf = n;
    while (nf < 16 * n && nf < 16384) nf *= 2;
    return nf;
}

StandardForm to_standard_form(int n, const GridFunction& symbol_on_lower,
                              const RadialFiberFamily& fibers, cd omega_plus, cd omega_minus) {
    const GridFunction a_ext = extend_symbol(symbol_on_lower);
    SymbolFactorization fac = factor_conjugate_symbol(a_ext);

    const RadialFiberFamily fine = resample_rows(fibers, refined_grid(n) / 2 + 1);
    std::vector<cd> h_row(fine.rows());
    std::vector<double> tau(fine.rows());
    for (int i = 0; i < fine.rows(); ++i) {
        h_row[i] = fac.h.evaluate(std::polar(1.0, fine.row_theta(i)));
        tau[i] = kPi / 2.0 + h_row[i].imag();
    }
    RadialFiberFamily rotated = rotate_rows(fine, tau);
    for (int i = 0; i < rotated.rows(); ++i)
        for (int j = 0; j < rotated.cols(); ++j) rotated.at(i, j) += h_row[i].real();

    StandardForm out{std::move(rotated),
                     ReductionData{normalize_arc(omega_plus, omega_minus), fac.h, fac.h_grid, fac.r,
                                   psi_grid(n)}};
    return out;
}

}  // namespace mrh
