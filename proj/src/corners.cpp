#include "mrh/corners.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mrh/reduction.hpp"

namespace mrh {

namespace {
constexpr double kPi = std::numbers::pi;

double delta_of(double beta) { return beta > 0.0 ? 1.0 - beta : -beta; }
}  // namespace

double CornerAngles::delta_plus() const { return delta_of(beta_plus); }
double CornerAngles::delta_minus() const { return delta_of(beta_minus); }

void CornerAngles::validate() const {
    const auto ok = [](double b) { return b > -1.0 && b < 1.0 && b != 0.0; };
    if (!ok(beta_plus) || !ok(beta_minus))
        throw std::invalid_argument("corner angles must lie in (-1,1) and be nonzero");
}

CornerData corner_data(const RadialFiberFamily& fam) {
    CornerData out;
    const double lphi_plus = fam.row_phi_derivative(0)[0];
    const double lphi_minus = fam.row_phi_derivative(fam.rows() - 1)[0];
    out.w_plus = std::exp(fam.at(0, 0));
    out.w_minus = std::exp(fam.at(fam.rows() - 1, 0));

    const double tau_plus = std::atan2(1.0, lphi_plus);
    const double tau_minus = std::atan2(1.0, lphi_minus);
    out.beta_plus = tau_plus / kPi;
    out.beta_minus = -tau_minus / kPi;
    out.delta_plus = 1.0 - out.beta_plus;
    out.delta_minus = -out.beta_minus;

    const double cap = std::min(std::min(out.beta_plus, 1.0 - out.beta_plus),
                                std::min(-out.beta_minus, 1.0 + out.beta_minus));
    if (cap <= 1e-3)
        throw std::domain_error("corner intersection is tangential or nearly so");
    out.beta_cap = cap - 1e-3;
    return out;
}

cd branch_power(cd xi, double delta, int corner) {
    if (corner != 1 && corner != -1) throw std::invalid_argument("corner must be +1 or -1");
    const cd v = corner == 1 ? xi - 1.0 : xi + 1.0;
    const double m = std::abs(v);
    if (m < 1e-14) return cd(0.0, 0.0);
    double a = std::arg(v);
    if (corner == 1 && a < 0.0) a += 2.0 * kPi;
    return std::polar(std::pow(m, delta), delta * a);
}

double corner_weight(double theta, double d1, double dm1) {
    const double s = 2.0 * std::sin(theta / 2.0);
    const double c = 2.0 * std::abs(std::cos(theta / 2.0));
    if (s < 1e-14 || c < 1e-14) return 0.0;
    return std::pow(s, d1) * std::pow(c, dm1);
}

cd corner_phase(double theta, double d1, double dm1, bool lower_arc) {
    const double phase_minus =
        (theta < kPi && !lower_arc) ? theta / 2.0 : theta / 2.0 - kPi;
    return std::polar(1.0, d1 * (theta + kPi) / 2.0 + dm1 * phase_minus);
}

cd corner_factor(double theta, double d1, double dm1) {
    const double w = corner_weight(theta, d1, dm1);
    if (w == 0.0) return cd(0.0, 0.0);
    return w * corner_phase(theta, d1, dm1, theta > kPi);
}

GridFunction assemble_f(const GridFunction& kappa, const CornerData& cdata, const GridFunction& psi) {
    const int n = kappa.size();
    if (psi.size() != n) throw std::invalid_argument("grid sizes differ");
    GridFunction f(n);
    for (int k = 0; k < n; ++k) {
        const cd blend = cdata.w_plus * (1.0 + psi[k]) * 0.5 + cdata.w_minus * (1.0 - psi[k]) * 0.5;
        f[k] = corner_factor(f.theta(k), cdata.delta_plus, cdata.delta_minus) * kappa[k] + blend;
    }
    return f;
}

GridFunction extract_kappa(const GridFunction& f, const CornerData& cdata, const GridFunction& psi) {
    const int n = f.size();
    if (psi.size() != n) throw std::invalid_argument("grid sizes differ");
    if (std::abs(f[0] - cd(cdata.w_plus, 0.0)) > 1e-6 * (1.0 + cdata.w_plus) ||
        std::abs(f[n / 2] - cd(cdata.w_minus, 0.0)) > 1e-6 * (1.0 + cdata.w_minus))
        throw std::invalid_argument("function is not pinned to the corner values");

    GridFunction kappa(n);
    for (int k = 0; k < n; ++k) {
        if (k == 0 || k == n / 2) continue;
        const cd blend = cdata.w_plus * (1.0 + psi[k]) * 0.5 + cdata.w_minus * (1.0 - psi[k]) * 0.5;
        kappa[k] = (f[k] - blend) / corner_factor(f.theta(k), cdata.delta_plus, cdata.delta_minus);
    }
    const auto fill = [&](int c) {
        const auto extrap = [&](int s1, int s2, int s3) {
            return 3.0 * kappa[((c + s1) % n + n) % n] - 3.0 * kappa[((c + s2) % n + n) % n] +
                   kappa[((c + s3) % n + n) % n];
        };
        kappa[c] = 0.5 * (extrap(1, 2, 3) + extrap(-1, -2, -3));
    };
    fill(0);
    fill(n / 2);
    return kappa;
}

cd corner_t(cd xi, int corner) {
    if (corner != 1 && corner != -1) throw std::invalid_argument("corner must be +1 or -1");
    if (corner == 1) return (xi - 1.0) / (cd(0, 1) * (xi + 1.0));
    return cd(0, 1) * (xi + 1.0) / (xi - 1.0);
}

namespace {

// Cutoff: 1 for theta <= pi/3, 0 for theta >= 2pi/3, quintic in between.
double chi_cutoff(double theta) {
    if (theta <= kPi / 3.0) return 1.0;
    if (theta >= 2.0 * kPi / 3.0) return 0.0;
    const double x = (theta - kPi / 3.0) / (kPi / 3.0);
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

}  // namespace

RhoTildeValues build_rho_tilde(const RadialFiberFamily& fam, const CornerData& cdata, double theta,
                               cd w) {
    if (!(theta > 0.0 && theta < kPi))
        throw std::domain_error("rho tilde is defined on the open upper arc");
    const cd xi = std::polar(1.0, theta);
    const cd P = corner_factor(theta, cdata.delta_plus, cdata.delta_minus);
    const cd blend_psi = half_disk_map(xi).psi;
    const cd blend = cdata.w_plus * (1.0 + blend_psi) * 0.5 + cdata.w_minus * (1.0 - blend_psi) * 0.5;

    const cd u = P * w + blend;
    const DefiningValues rho = eval_defining(fam, theta, u);

    const double t1 = std::tan(theta / 2.0);
    const double s1 = std::pow(t1, -cdata.delta_plus);
    const double sm1 = std::pow(1.0 / t1, -cdata.delta_minus);
    const double chi = chi_cutoff(theta);
    const double scale = chi * s1 + (1.0 - chi) * sm1;

    RhoTildeValues out;
    out.value = scale * rho.rho;
    out.w_derivative = scale * rho.rho_w * P;
    return out;
}

}  // namespace mrh
