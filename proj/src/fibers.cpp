#include "mrh/fibers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mrh {

namespace {

constexpr double kPi = std::numbers::pi;

// Catmull-Rom segment through f_{-1}, f_0, f_1, f_2 at x in [0,1].
struct CubicSeg {
    double a, b, c, d;

    static CubicSeg fit(double fm1, double f0, double f1, double f2) {
        CubicSeg s;
        s.a = -0.5 * fm1 + 1.5 * f0 - 1.5 * f1 + 0.5 * f2;
        s.b = fm1 - 2.5 * f0 + 2.0 * f1 - 0.5 * f2;
        s.c = 0.5 * (f1 - fm1);
        s.d = f0;
        return s;
    }
    double value(double x) const { return ((a * x + b) * x + c) * x + d; }
    double slope(double x) const { return (3.0 * a * x + 2.0 * b) * x + c; }
};

}  // namespace

RadialFiberFamily::RadialFiberFamily(int m_theta, int p_phi, std::vector<double> lam)
    : m_(m_theta), p_(p_phi), lam_(std::move(lam)) {
    if (m_ < 33 || m_ % 2 == 0)
        throw std::invalid_argument("fiber family needs an odd row count of at least 33");
    if (p_ < 64 || !is_power_of_two(p_))
        throw std::invalid_argument("fiber family needs a power-of-two column count of at least 64");
    if (lam_.size() != static_cast<size_t>(m_) * p_)
        throw std::invalid_argument("log-radius table size does not match the grid");
    for (double v : lam_)
        if (!std::isfinite(v)) throw std::invalid_argument("log-radius table has a non-finite entry");
}

RadialFiberFamily RadialFiberFamily::circles(int m_theta, int p_phi, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
    std::vector<double> lam(static_cast<size_t>(m_theta) * p_phi, std::log(radius));
    return RadialFiberFamily(m_theta, p_phi, std::move(lam));
}

RadialFiberFamily RadialFiberFamily::radial_cos(int m_theta, int p_phi, double eps, int k) {
    std::vector<double> lam(static_cast<size_t>(m_theta) * p_phi);
    for (int i = 0; i < m_theta; ++i)
        for (int j = 0; j < p_phi; ++j)
            lam[static_cast<size_t>(i) * p_phi + j] = eps * std::cos(k * 2.0 * kPi * j / p_phi);
    return RadialFiberFamily(m_theta, p_phi, std::move(lam));
}

RadialFiberFamily RadialFiberFamily::radial_theta(int m_theta, int p_phi, double eps) {
    std::vector<double> lam(static_cast<size_t>(m_theta) * p_phi);
    for (int i = 0; i < m_theta; ++i) {
        const double v = eps * std::cos(kPi * i / (m_theta - 1));
        for (int j = 0; j < p_phi; ++j) lam[static_cast<size_t>(i) * p_phi + j] = v;
    }
    return RadialFiberFamily(m_theta, p_phi, std::move(lam));
}

double RadialFiberFamily::row_theta(int i) const { return kPi * i / (m_ - 1); }

LamJet RadialFiberFamily::lam_jet(double theta, double phi) const {
    if (!(theta >= -1e-9 && theta <= kPi + 1e-9))
        throw std::invalid_argument("theta outside the upper arc [0, pi]");
    const double h_theta = kPi / (m_ - 1);
    double s = std::clamp(theta / h_theta, 0.0, static_cast<double>(m_ - 1));
    int i0 = std::min(static_cast<int>(std::floor(s)), m_ - 2);
    const double ty = s - i0;

    double u = phi / (2.0 * kPi) * p_;
    u -= std::floor(u / p_) * p_;
    int j0 = static_cast<int>(std::floor(u)) % p_;
    const double tx = u - std::floor(u);
    const double h_phi = 2.0 * kPi / p_;

    const auto clamp_row = [&](int i) { return std::clamp(i, 0, m_ - 1); };
    const auto wrap_col = [&](int j) { return ((j % p_) + p_) % p_; };

    double val[4], dphi[4];
    for (int r = 0; r < 4; ++r) {
        const int i = clamp_row(i0 - 1 + r);
        const CubicSeg seg = CubicSeg::fit(at(i, wrap_col(j0 - 1)), at(i, wrap_col(j0)),
                                           at(i, wrap_col(j0 + 1)), at(i, wrap_col(j0 + 2)));
        val[r] = seg.value(tx);
        dphi[r] = seg.slope(tx) / h_phi;
    }
    const CubicSeg segv = CubicSeg::fit(val[0], val[1], val[2], val[3]);
    const CubicSeg segd = CubicSeg::fit(dphi[0], dphi[1], dphi[2], dphi[3]);

    LamJet jet;
    jet.lam = segv.value(ty);
    jet.lam_theta = segv.slope(ty) / h_theta;
    jet.lam_phi = segd.value(ty);
    return jet;
}

double RadialFiberFamily::radius(double theta, double phi) const {
    return std::exp(lam_jet(theta, phi).lam);
}

std::vector<double> RadialFiberFamily::row_phi_derivative(int i) const {
    if (i < 0 || i >= m_) throw std::invalid_argument("row index out of range");
    GridFunction row(p_);
    for (int j = 0; j < p_; ++j) row[j] = at(i, j);
    auto bins = dft_bins(row);
    std::vector<cd> der(bins.size());
    der[0] = 0.0;
    for (int m = 1; m < p_ / 2; ++m) der[m] = bins[m] * cd(0.0, m);
    der[p_ / 2] = 0.0;
    for (int m = p_ / 2 + 1; m < p_; ++m) der[m] = bins[m] * cd(0.0, m - p_);
    const GridFunction g = idft_bins(p_, der);
    std::vector<double> out(static_cast<size_t>(p_));
    for (int j = 0; j < p_; ++j) out[j] = g[j].real();
    return out;
}

double RadialFiberFamily::row_sup_phi_derivative(int i) const {
    double s = 0.0;
    for (double v : row_phi_derivative(i)) s = std::max(s, std::abs(v));
    return s;
}

double RadialFiberFamily::max_row_variation() const {
    double dev = 0.0;
    for (int i = 0; i < m_; ++i) {
        double mean = 0.0;
        for (int j = 0; j < p_; ++j) mean += at(i, j);
        mean /= p_;
        for (int j = 0; j < p_; ++j) dev = std::max(dev, std::abs(at(i, j) - mean));
    }
    return dev;
}

RadialFiberFamily RadialFiberFamily::isotopy_at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("isotopy parameter must lie in [0, 1]");
    double mean = 0.0;
    for (double v : lam_) mean += v;
    mean /= static_cast<double>(lam_.size());
    std::vector<double> lam(lam_.size());
    for (size_t k = 0; k < lam_.size(); ++k) lam[k] = (1.0 - t) * lam_[k] + t * mean;
    return RadialFiberFamily(m_, p_, std::move(lam));
}

RadialFiberFamily rotate_rows(const RadialFiberFamily& fam, const std::vector<double>& alpha) {
    if (static_cast<int>(alpha.size()) != fam.rows())
        throw std::invalid_argument("rotate_rows needs one shift per row");
    const int p = fam.cols();
    std::vector<double> lam(static_cast<size_t>(fam.rows()) * p);
    for (int i = 0; i < fam.rows(); ++i) {
        GridFunction row(p);
        for (int j = 0; j < p; ++j) row[j] = fam.at(i, j);
        auto bins = dft_bins(row);
        for (int m = 1; m < p / 2; ++m) {
            bins[m] *= std::polar(1.0, -m * alpha[i]);
            bins[p - m] *= std::polar(1.0, m * alpha[i]);
        }
        bins[p / 2] *= std::cos(p / 2 * alpha[i]);
        const GridFunction shifted = idft_bins(p, bins);
        for (int j = 0; j < p; ++j) lam[static_cast<size_t>(i) * p + j] = shifted[j].real();
    }
    return RadialFiberFamily(fam.rows(), p, std::move(lam));
}

RadialFiberFamily resample_rows(const RadialFiberFamily& fam, int rows_out) {
    if (rows_out == fam.rows()) return fam;
    const int p = fam.cols();
    std::vector<double> lam(static_cast<size_t>(rows_out) * p);
    for (int i = 0; i < rows_out; ++i) {
        const double theta = kPi * i / (rows_out - 1);
        for (int j = 0; j < p; ++j)
            lam[static_cast<size_t>(i) * p + j] = fam.lam_jet(theta, 2.0 * kPi * j / p).lam;
    }
    return RadialFiberFamily(rows_out, p, std::move(lam));
}

RadialFiberFamily RadialFiberFamily::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fiber file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "theta,phi,log_r")
        throw std::invalid_argument("fiber file must start with header theta,phi,log_r: " + path);

    std::vector<double> thetas, phis, vals;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        double t, p, v;
        char c1, c2;
        if (!(ss >> t >> c1 >> p >> c2 >> v) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("fiber file: bad row at line " + std::to_string(lineno));
        thetas.push_back(t);
        phis.push_back(p);
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument("fiber file has no data rows: " + path);

    size_t p_count = 1;
    while (p_count < vals.size() && thetas[p_count] == thetas[0]) ++p_count;
    if (vals.size() % p_count != 0)
        throw std::invalid_argument("fiber file: row count is not a multiple of the phi count");
    const int p = static_cast<int>(p_count);
    const int m = static_cast<int>(vals.size() / p_count);

    RadialFiberFamily fam(m, p, std::move(vals));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) {
            const size_t idx = static_cast<size_t>(i) * p + j;
            if (std::abs(thetas[idx] - fam.row_theta(i)) > 1e-9 ||
                std::abs(phis[idx] - 2.0 * kPi * j / p) > 1e-9)
                throw std::invalid_argument("fiber file: grid coordinates out of order at data row " +
                                            std::to_string(idx + 1));
        }
    return fam;
}

void RadialFiberFamily::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write fiber file: " + path);
    out << "theta,phi,log_r\n";
    char buf[96];
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < p_; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", row_theta(i), 2.0 * kPi * j / p_,
                          at(i, j));
            out << buf;
        }
}

DefiningValues eval_defining(const RadialFiberFamily& fam, double theta, cd w) {
    if (std::abs(w) < 1e-14) throw std::domain_error("defining gradient undefined at w = 0");
    const LamJet jet = fam.lam_jet(theta, std::arg(w));
    const double R = std::exp(jet.lam);
    DefiningValues out;
    out.rho = std::norm(w) - R * R;
    out.rho_theta = -2.0 * R * R * jet.lam_theta;
    out.rho_w = std::conj(w) + cd(0.0, 1.0) * (R * R * jet.lam_phi) / w;
    return out;
}

double angle_field_d(const RadialFiberFamily& fam, double theta, cd w) {
    if (std::abs(w) < 1e-14) throw std::domain_error("angle field needs a nonzero boundary point");
    const DefiningValues v = eval_defining(fam, theta, w);
    if (std::abs(v.rho) > 1e-6 * (1.0 + std::norm(w)))
        throw std::domain_error("angle field evaluated off the fiber");
    return std::arg(w * v.rho_w);
}

AngleValidation validate_angles(const RadialFiberFamily& fam) {
    AngleValidation out;
    for (int i = 0; i < fam.rows(); ++i) {
        const double s = fam.row_sup_phi_derivative(i);
        out.all_row_sup = std::max(out.all_row_sup, s);
        if (i == 0 || i == fam.rows() - 1) out.endpoint_sup = std::max(out.endpoint_sup, s);
    }
    out.beta0 = 2.0 / kPi * std::atan(out.endpoint_sup);
    out.pass = std::atan(out.endpoint_sup) < kPi / 10.0;
    return out;
}

}  // namespace mrh
