#include "mrh/linear_rh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mrh/circle_ops.hpp"

namespace mrh {

namespace {

constexpr double kPi = std::numbers::pi;

void check_corner_consistency(cd B_corner, double beta, int corner) {
    // B(1) = -i e^{i pi beta_1}, B(-1) = -i e^{-i pi beta_-1} up to modulus.
    const double want = corner == 1 ? kPi * beta : -kPi * beta;
    const double got = std::arg(cd(0, 1) * B_corner / std::abs(B_corner));
    double diff = std::remainder(got - want, 2.0 * kPi);
    if (std::abs(diff) > 0.2)
        throw std::invalid_argument("corner angles inconsistent with coefficient corner values");
}

// Real L2 inner product on the grid.
double grid_dot(const GridFunction& u, const GridFunction& v) {
    double s = 0.0;
    for (int k = 0; k < u.size(); ++k)
        s += u[k].real() * v[k].real() + u[k].imag() * v[k].imag();
    return s * 2.0 * kPi / u.size();
}

struct FourierSolveResult {
    GridFunction particular;
    std::vector<GridFunction> kernel;
};

// Re(xi^{-N} e^{iv} kappa) = rhs with e^{iv} = coeff * xi^N unimodular and
// continuous. N >= 0 or N == -1 (unique when the mean of the reduced rhs
// vanishes; its top coefficient is free and is used to match the Nyquist
// bin, so the solve is exact on the grid).
FourierSolveResult solve_unimodular(const GridFunction& coeff, const GridFunction& rhs, int N) {
    const int n = coeff.size();
    if (N < -1 || N > n / 8) throw std::runtime_error("winding out of range for this grid");

    GridFunction v(n);
    double run = 0.0;
    cd prev(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        const cd z = coeff[k] * std::polar(1.0, N * coeff.theta(k));
        run += std::arg(z / prev);
        v[k] = run;
        prev = z;
    }
    if (std::abs(run + std::arg(coeff[0] / prev) - std::arg(coeff[0])) > 1e-6)
        throw std::runtime_error("unimodular factor fails to close around the circle");

    const GridFunction hv = hilbert_transform(v);
    GridFunction bhat(n);
    for (int k = 0; k < n; ++k) bhat[k] = rhs[k].real() * std::exp(-hv[k].real());
    const double bhat_sup = bhat.sup_norm();
    const auto bins = dft_bins(bhat);
    std::vector<cd> c(static_cast<size_t>(n / 2) + 1);
    for (int m = 0; m <= n / 2; ++m) c[m] = bins[m] / static_cast<double>(n);

    const auto to_grid = [&](const std::vector<cd>& w_coeff) {
        std::vector<cd> wbins(static_cast<size_t>(n), cd(0.0, 0.0));
        for (size_t m = 0; m < w_coeff.size(); ++m) wbins[m] = w_coeff[m] * static_cast<double>(n);
        const GridFunction w = idft_bins(n, wbins);
        GridFunction kappa(n);
        for (int k = 0; k < n; ++k)
            kappa[k] = w[k] * std::polar(std::exp(hv[k].real()), -v[k].real());
        return kappa;
    };

    FourierSolveResult out{GridFunction(n), {}};
    std::vector<cd> w(static_cast<size_t>(n / 2), cd(0.0, 0.0));
    if (N == -1) {
        if (std::abs(c[0]) > 1e-8 * (1.0 + bhat_sup))
            throw std::runtime_error("mean compatibility fails for negative index");
        for (int m = 0; m + 1 <= n / 2 - 1; ++m) w[m] = 2.0 * c[m + 1];
        w[n / 2 - 1] = cd(c[n / 2].real(), 0.0);
        out.particular = to_grid(w);
        return out;
    }

    w[N] = cd(c[0].real(), 0.0);
    for (int m = 1; N + m <= n / 2 - 1; ++m) w[N + m] = 2.0 * c[m];
    out.particular = to_grid(w);

    std::vector<cd> kw(static_cast<size_t>(n / 2), cd(0.0, 0.0));
    kw[N] = cd(0.0, 1.0);
    out.kernel.push_back(to_grid(kw));
    for (int m = 1; m <= N; ++m) {
        std::fill(kw.begin(), kw.end(), cd(0.0, 0.0));
        kw[N + m] = cd(1.0, 0.0);
        kw[N - m] = cd(-1.0, 0.0);
        out.kernel.push_back(to_grid(kw));
        kw[N + m] = cd(0.0, 1.0);
        kw[N - m] = cd(0.0, 1.0);
        out.kernel.push_back(to_grid(kw));
        kw[N - m] = cd(0.0, 0.0);
        kw[N + m] = cd(0.0, 0.0);
    }
    return out;
}

}  // namespace

LinearRHProblem build_linear_problem(const std::vector<cd>& B_upper,
                                     const std::vector<double>& rhs_upper,
                                     const CornerAngles& angles,
                                     const std::vector<double>& rhs_lower) {
    angles.validate();
    const int half = static_cast<int>(B_upper.size()) - 1;
    const int n = 2 * half;
    if (half < 2 || !is_power_of_two(n))
        throw std::invalid_argument("upper-arc sample count must be a power of two plus one");
    if (rhs_upper.size() != B_upper.size())
        throw std::invalid_argument("upper-arc value counts differ");
    if (!rhs_lower.empty() && static_cast<int>(rhs_lower.size()) != half - 1)
        throw std::invalid_argument("lower-arc right-hand side needs n/2 - 1 values");

    double scale = 0.0;
    for (const cd& b : B_upper) scale = std::max(scale, std::abs(b));
    for (const cd& b : B_upper)
        if (std::abs(b) < 1e-12 * scale)
            throw std::invalid_argument("coefficient vanishes on the upper arc");
    check_corner_consistency(B_upper[0], angles.beta_plus, 1);
    check_corner_consistency(B_upper[half], angles.beta_minus, -1);

    const double d1 = angles.delta_plus();
    const double dm1 = angles.delta_minus();
    const double sign = angles.beta_minus < 0.0 ? 1.0 : -1.0;

    LinearRHProblem prob{GridFunction(n), GridFunction(n), 0, false};
    for (int k = 0; k < n; ++k) {
        const double theta = prob.b_tilde_coeff.theta(k);
        if (k <= half) {
            const cd bk = std::conj(B_upper[k]) / std::abs(B_upper[k]);
            if (k < half) {
                prob.b_tilde_coeff[k] = bk * corner_phase(theta, d1, dm1, false);
                prob.rhs[k] = rhs_upper[k];
            } else {
                prob.b_tilde_coeff[k] = sign * cd(0, 1) * corner_phase(theta, d1, dm1, true);
                prob.rhs[k] = rhs_upper[k];
            }
        } else {
            prob.b_tilde_coeff[k] = sign * cd(0, 1) * corner_phase(theta, d1, dm1, true);
            prob.rhs[k] = rhs_lower.empty() ? 0.0 : rhs_lower[k - half - 1];
        }
    }

    GridFunction conj_coeff(n);
    for (int k = 0; k < n; ++k) conj_coeff[k] = std::conj(prob.b_tilde_coeff[k]);
    const DoubledWinding w = winding_number(conj_coeff, true);
    prob.two_n = w.two_n;
    prob.half = w.half;

    if (prob.half) {
        double sup = 0.0;
        for (int k = 0; k < n; ++k) sup = std::max(sup, std::abs(prob.rhs[k]));
        if (std::abs(prob.rhs[0]) > 1e-8 * (1.0 + sup))
            throw std::invalid_argument("right-hand side must vanish at xi = 1 for odd index");
    }
    return prob;
}

LinearRHProblem build_linear_problem(const std::vector<cd>& B_upper,
                                     const std::vector<double>& rhs_upper, const CornerData& cdata,
                                     const std::vector<double>& rhs_lower) {
    return build_linear_problem(B_upper, rhs_upper, cdata.angles(), rhs_lower);
}

LinearSolution solve_linear(const LinearRHProblem& prob) {
    const int n = prob.b_tilde_coeff.size();
    for (int k = 0; k < n; ++k)
        if (std::abs(std::abs(prob.b_tilde_coeff[k]) - 1.0) > 1e-10)
            throw std::invalid_argument("coefficient must be unimodular");
    if (prob.two_n < -1) throw std::runtime_error("index below -1/2 is over-determined");
    if ((prob.two_n % 2 != 0) != prob.half)
        throw std::invalid_argument("half flag does not match the doubled winding parity");

    FourierSolveResult raw{GridFunction(n), {}};
    if (!prob.half) {
        // In e^{iv} = coeff * xi^N the sign convention ties v to the
        // conjugate-winding index: coeff has winding -N.
        raw = solve_unimodular(prob.b_tilde_coeff, prob.rhs, prob.two_n / 2);
    } else {
        const int m = 2 * n;
        GridFunction coeff_c(m), rhs_c(m);
        double sgn = 1.0;
        for (int l = 0; l < m; ++l) {
            const cd base = prob.b_tilde_coeff[l % n];
            if (l > 0 && std::abs(std::arg(sgn * base / coeff_c[l - 1])) >= kPi / 2.0) sgn = -sgn;
            coeff_c[l] = sgn * base;
            rhs_c[l] = sgn * prob.rhs[l % n].real();
        }
        // On the cover, zeta^2 = xi, the tiled coefficient is continuous and
        // its index doubles to the (odd) integer two_n.
        GridFunction conj_c(m);
        for (int l = 0; l < m; ++l) conj_c[l] = std::conj(coeff_c[l]);
        if (winding_number(conj_c, false).two_n != 2 * prob.two_n)
            throw std::runtime_error("cover lift has unexpected winding");

        const FourierSolveResult cover = solve_unimodular(coeff_c, rhs_c, prob.two_n);

        const auto descend = [&](const GridFunction& g) {
            GridFunction out(n);
            for (int k = 0; k < n; ++k) out[k] = 0.5 * (g[k] + g[k + n]);
            return out;
        };
        raw.particular = descend(cover.particular);
        std::vector<GridFunction> cand;
        cand.reserve(cover.kernel.size());
        for (const auto& g : cover.kernel) cand.push_back(descend(g));
        // Even projection halves the kernel: keep an orthonormal survivor set.
        for (auto& g : cand) {
            for (const auto& kept : raw.kernel) g -= grid_dot(g, kept) * kept;
            const double nrm = std::sqrt(grid_dot(g, g));
            if (nrm > 1e-6) raw.kernel.push_back((1.0 / nrm) * g);
        }
        const int expect = prob.two_n + 1;
        if (static_cast<int>(raw.kernel.size()) != std::max(0, expect))
            throw std::runtime_error("kernel dimension differs from the index count");
    }

    LinearSolution out;
    out.particular = raw.particular;
    out.kernel = std::move(raw.kernel);
    double sup = 0.0, res = 0.0;
    for (int k = 0; k < n; ++k) {
        sup = std::max(sup, std::abs(prob.rhs[k]));
        res = std::max(res,
                       std::abs((prob.b_tilde_coeff[k] * out.particular[k]).real() - prob.rhs[k].real()));
    }
    out.residual = res;
    if (res > 1e-8 * (1.0 + sup))
        throw std::runtime_error("linear solve residual exceeds tolerance");
    out.particular_series = analytic_projection(out.particular).fn;
    out.kernel_series.reserve(out.kernel.size());
    for (const auto& g : out.kernel) out.kernel_series.push_back(analytic_projection(g).fn);
    return out;
}

}  // namespace mrh
