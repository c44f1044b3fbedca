#include "mrh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mrh/circle_ops.hpp"
#include "mrh/linear_rh.hpp"

namespace mrh {
namespace {
constexpr double kPi = std::numbers::pi;
}

ResidualReport verify_solution(const MixedProblem& prob, const SolutionBundle& bundle) {
    const int n = prob.grid();
    const GridFunction& f = bundle.f_boundary;
    if (f.size() != n)
        throw std::invalid_argument("solution grid does not match the problem grid");
    const int half = n / 2;
    const double d1 = bundle.corner.delta_plus;
    const double dm1 = bundle.corner.delta_minus;

    double fmin = f.sup_norm();
    for (int k = 0; k < n; ++k) fmin = std::min(fmin, std::abs(f[k]));
    if (fmin <= 1e-14 * (1.0 + f.sup_norm()))
        throw std::runtime_error("solution vanishes on the boundary grid: zero count undefined");

    ResidualReport rep;
    rep.beta_cap = bundle.corner.beta_cap;
    for (int k = 1; k < half; ++k) {
        const double theta = f.theta(k);
        const DefiningValues dv = eval_defining(prob.fibers, theta, f[k]);
        const double grad = std::abs(dv.rho_w);
        if (grad <= 1e-14)
            throw std::runtime_error("defining gradient vanishes on the upper arc");
        rep.sup_residual_upper =
            std::max(rep.sup_residual_upper,
                     std::abs(dv.rho) / (2.0 * grad * corner_weight(theta, d1, dm1)));
    }
    for (int k = half; k <= n; ++k) {
        const cd a = prob.symbol[k % n];
        if (std::abs(a) < 1e-12) throw std::invalid_argument("symbol vanishes on the linear arc");
        rep.sup_residual_lower = std::max(
            rep.sup_residual_lower, std::abs((std::conj(a) * f[k % n]).real()) / std::abs(a));
    }

    const AnalyticProjection proj = analytic_projection(f);
    rep.analyticity_residual =
        proj.total_energy > 0.0 ? proj.discarded_energy / proj.total_energy : 0.0;

    const double r = 1.0 - 2.0 / n;
    GridFunction ring(n);
    for (int k = 0; k < n; ++k)
        ring[k] = bundle.f_analytic.evaluate(std::polar(r, ring.theta(k)));
    rep.zero_count = winding_number(ring, false).two_n / 2;

    const int radius = std::max(2, n / 32);
    rep.holder_fit_plus = holder_estimate(f, 0, radius);
    rep.holder_fit_minus = holder_estimate(f, half, radius);

    rep.pass = rep.sup_residual_upper < 1e-6 && rep.sup_residual_lower < 1e-6 &&
               rep.analyticity_residual < 1e-8;
    return rep;
}

GridFunction log_oracle_solve(const RadialFiberFamily& fam, int n) {
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument("grid size must be a power of two, at least 64");
    if (fam.max_row_variation() > 1e-12)
        throw std::domain_error("log oracle needs circle fibers: rows vary with phi");

    const int nf = refined_grid(n);
    const CornerData cdata = corner_data(fam);
    const GridFunction psi = psi_grid(nf);
    const int half = nf / 2;
    const double lw_plus = std::log(cdata.w_plus);
    const double lw_minus = std::log(cdata.w_minus);
    std::vector<cd> g0(nf);
    for (int k = 0; k < nf; ++k)
        g0[k] = lw_plus * (1.0 + psi[k]) / 2.0 + lw_minus * (1.0 - psi[k]) / 2.0;

    std::vector<cd> b_upper(half + 1, cd(1.0, 0.0));
    std::vector<double> rhs_upper(half + 1, 0.0);
    for (int k = 1; k < half; ++k) {
        const double theta = 2.0 * kPi * k / nf;
        rhs_upper[k] = (fam.lam_jet(theta, 0.0).lam - g0[k].real()) /
                       corner_weight(theta, cdata.delta_plus, cdata.delta_minus);
    }
    const LinearSolution sol = solve_linear(build_linear_problem(b_upper, rhs_upper, cdata));

    // Solved at the refined grid for the same corner-resolution reason as the
    // continuation; the trace formula is pointwise, so restriction is exact.
    const int stride = nf / n;
    GridFunction f(n);
    for (int k = 0; k < n; ++k) {
        const int kf = k * stride;
        const double theta = 2.0 * kPi * kf / nf;
        f[k] = std::exp(g0[kf] + corner_factor(theta, cdata.delta_plus, cdata.delta_minus) *
                                     sol.particular[kf]);
    }
    return f;
}

ZygmundCheck zygmund_check(const GridFunction& u, double p) {
    if (p <= 0.0) throw std::invalid_argument("p must be positive");
    if (!u.is_real()) throw std::invalid_argument("conjugate-function bound needs a real input");
    const double sup = u.sup_norm();
    if (p * sup >= kPi / 2.0)
        throw std::domain_error("hypothesis p * sup|u| < pi/2 fails");
    const GridFunction hu = hilbert_transform(u);
    GridFunction e(u.size());
    for (int k = 0; k < u.size(); ++k) e[k] = std::exp(hu[k].real());
    ZygmundCheck out;
    out.lhs = lp_norm(e, p);
    out.rhs = std::pow(2.0 * kPi / std::cos(p * sup), 1.0 / p);
    out.pass = out.lhs <= out.rhs * (1.0 + 1e-6);
    return out;
}

}  // namespace mrh
