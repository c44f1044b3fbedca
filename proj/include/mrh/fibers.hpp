#pragma once

#include <string>
#include <vector>

#include "mrh/grid_function.hpp"

namespace mrh {

// Value and first partials of the log-radius field at one point.
struct LamJet {
    double lam = 0.0;
    double lam_theta = 0.0;
    double lam_phi = 0.0;
};

// Family of starshaped boundary curves over the upper arc, one per
// theta in [0, pi]. Curve theta is { r e^{i phi} : r = exp(lam(theta, phi)) }.
// Stored on an (m_theta) x (p_phi) grid, row-major; rows are theta slices,
// uniformly spaced with row 0 at theta = 0 and the last row at theta = pi.
// Columns are phi = 2*pi*j/p_phi, periodic.
class RadialFiberFamily {
public:
    RadialFiberFamily(int m_theta, int p_phi, std::vector<double> lam);

    static RadialFiberFamily circles(int m_theta, int p_phi, double radius);
    // lam(theta, phi) = eps * cos(k phi)
    static RadialFiberFamily radial_cos(int m_theta, int p_phi, double eps, int k);
    // lam(theta, phi) = eps * cos(theta), phi-independent rows
    static RadialFiberFamily radial_theta(int m_theta, int p_phi, double eps);

    int rows() const { return m_; }
    int cols() const { return p_; }
    double row_theta(int i) const;
    double at(int i, int j) const { return lam_[static_cast<size_t>(i) * p_ + j]; }
    double& at(int i, int j) { return lam_[static_cast<size_t>(i) * p_ + j]; }
    const std::vector<double>& data() const { return lam_; }

    // Bicubic interpolation of lam: periodic in phi, clamped in theta.
    // Derivatives are the exact partials of the interpolant.
    LamJet lam_jet(double theta, double phi) const;
    double radius(double theta, double phi) const;  // exp(lam)

    // Spectral d/dphi of one stored row (exact for band-limited rows).
    std::vector<double> row_phi_derivative(int i) const;
    double row_sup_phi_derivative(int i) const;

    // Largest deviation of a row from its own mean, over all rows.
    double max_row_variation() const;

    // Linear slide of the family onto one round circle: at t = 1 every fiber
    // is the circle of radius exp(global mean of lam), at t = 0 the original.
    RadialFiberFamily isotopy_at(double t) const;

    // theta,phi,log_r CSV, row-major.
    static RadialFiberFamily read_csv(const std::string& path);
    void write_csv(const std::string& path) const;

private:
    int m_ = 0;
    int p_ = 0;
    std::vector<double> lam_;
};

// rho(theta, w) = |w|^2 - R(theta, arg w)^2 with R = exp(lam), plus the
// partials used by the linearized equations.
struct DefiningValues {
    double rho = 0.0;
    cd rho_w;          // d rho / d w (Wirtinger)
    double rho_theta = 0.0;
};

DefiningValues eval_defining(const RadialFiberFamily& fam, double theta, cd w);

// arg(w * rho_w) at a point of the fiber over theta. Requires w to lie on
// the fiber (checked) and w != 0.
double angle_field_d(const RadialFiberFamily& fam, double theta, cd w);

// New family with each row phi-shifted: lam'(theta_i, phi) = lam(theta_i,
// phi - alpha_i), applied spectrally (exact for band-limited rows).
RadialFiberFamily rotate_rows(const RadialFiberFamily& fam, const std::vector<double>& alpha);

// Same interpolant resampled on rows_out uniform rows over [0, pi].
RadialFiberFamily resample_rows(const RadialFiberFamily& fam, int rows_out);

struct AngleValidation {
    double endpoint_sup = 0.0;  // sup |d/dphi lam| over the two endpoint rows
    double all_row_sup = 0.0;   // same sup over every row
    double beta0 = 0.0;         // (2/pi) * arctan(endpoint_sup)
    bool pass = false;          // arctan(endpoint_sup) < pi/10
};

AngleValidation validate_angles(const RadialFiberFamily& fam);

}  // namespace mrh
