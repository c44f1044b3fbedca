#include "mrh/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "mrh/circle_ops.hpp"
#include "mrh/linear_rh.hpp"
#include "mrh/verify.hpp"

namespace mrh {
namespace {
constexpr double kPi = std::numbers::pi;

double grid_dot(const GridFunction& x, const GridFunction& y) {
    double s = 0.0;
    for (int k = 0; k < x.size(); ++k) s += (x[k] * std::conj(y[k])).real();
    return s * (2.0 * kPi / x.size());
}

std::vector<GridFunction> orthonormalize(std::vector<GridFunction> basis) {
    std::vector<GridFunction> q;
    for (auto& v : basis) {
        for (const auto& u : q) {
            const double c = grid_dot(v, u);
            for (int k = 0; k < v.size(); ++k) v[k] -= c * u[k];
        }
        const double norm = std::sqrt(grid_dot(v, v));
        if (norm < 1e-6) continue;
        v *= 1.0 / norm;
        q.push_back(std::move(v));
    }
    return q;
}

// Linearization of the fiber condition at f = assemble_f(kappa): the update
// d solves Re(conj(B) P d) = -rho above (B = 2 conj(rho_w)) and keeps
// Im(P (kappa + d)) = 0 below. Corner rows are pinned to zero since P
// vanishes there.
LinearRHProblem linearize(const RadialFiberFamily& fam, const CornerData& cdata,
                          const GridFunction& psi, const GridFunction& kappa) {
    const int n = kappa.size();
    const int half = n / 2;
    const GridFunction f = assemble_f(kappa, cdata, psi);
    std::vector<cd> b_upper(half + 1);
    std::vector<double> rhs_upper(half + 1, 0.0);
    for (int k = 0; k <= half; ++k) {
        const double theta = 2.0 * kPi * k / n;
        const DefiningValues dv = eval_defining(fam, theta, f[k]);
        b_upper[k] = 2.0 * std::conj(dv.rho_w);
        if (k == 0 || k == half) continue;
        const double scale = std::abs(b_upper[k]) * corner_weight(theta, cdata.delta_plus, cdata.delta_minus);
        if (scale <= 1e-14) throw std::runtime_error("defining gradient vanishes at an iterate");
        rhs_upper[k] = -dv.rho / scale;
    }
    const double sign = cdata.beta_minus < 0.0 ? 1.0 : -1.0;
    std::vector<double> rhs_lower(half - 1, 0.0);
    for (int k = half + 1; k < n; ++k) {
        const double theta = 2.0 * kPi * k / n;
        const cd u = corner_phase(theta, cdata.delta_plus, cdata.delta_minus, true);
        rhs_lower[k - half - 1] = sign * (u * kappa[k]).imag();
    }
    return build_linear_problem(b_upper, rhs_upper, cdata, rhs_lower);
}

// Standard-form bundle around a final kappa; residuals are filled in by the
// caller against the problem it answers for.
SolutionBundle assemble_bundle(const RadialFiberFamily& fam, const GridFunction& psi,
                               const GridFunction& kappa, std::vector<ContinuationStep> trace) {
    const CornerData cdata = corner_data(fam);
    SolutionBundle b;
    b.kappa = kappa;
    b.corner = cdata;
    b.trace = std::move(trace);
    b.index_two_n = linearize(fam, cdata, psi, kappa).two_n;
    b.w_plus = cdata.w_plus;
    b.w_minus = cdata.w_minus;
    b.f_boundary = assemble_f(kappa, cdata, psi);
    b.f_analytic = analytic_projection(b.f_boundary).fn;
    b.kappa_series = analytic_projection(kappa).fn;
    b.h = AnalyticFunction{{cd(0.0, -kPi / 2.0)}};
    return b;
}

// Power-series coefficients of the Blaschke product carrying the prescribed
// zeros, truncated to len terms (geometric tail in max |zero|).
std::vector<cd> blaschke_series(const ZeroPrescription& zp, int len) {
    std::vector<cd> s(len, cd(0.0, 0.0));
    s[0] = 1.0;
    const auto apply = [&](cd a) {
        const cd ab = std::conj(a);
        std::vector<cd> g(len);
        for (int k = 0; k < len; ++k) g[k] = s[k] + (k > 0 ? ab * g[k - 1] : cd(0.0, 0.0));
        for (int k = len - 1; k >= 0; --k) s[k] = (k > 0 ? g[k - 1] : cd(0.0, 0.0)) - a * g[k];
    };
    for (const auto& zero : zp.zeros) {
        const cd a{zero.re, zero.im};
        for (int j = 0; j < zero.multiplicity; ++j) {
            apply(a);
            if (!zero.is_real()) apply(std::conj(a));
        }
    }
    return s;
}

// Multiplies the standard-form trace by the Blaschke product and the
// symbol factor so the bundle answers for the original problem. The
// Blaschke factor enters the coefficient form analytically so prescribed
// zeros survive the corner-induced spectral aliasing.
void compose_original(SolutionBundle& b, const MixedProblem& prob, const ZeroPrescription& zeros,
                      const AnalyticFunction& h) {
    const int n = prob.grid();
    b.h = h;
    b.zeros = zeros;
    const GridFunction htr = h.trace(n);
    GridFunction zero_free(n);
    for (int k = 0; k < n; ++k)
        zero_free[k] = cd(0.0, -1.0) * std::exp(-htr[k]) * b.f_boundary[k];
    GridFunction f(n);
    for (int k = 0; k < n; ++k) f[k] = blaschke_back(zeros, f.node(k)) * zero_free[k];
    const AnalyticFunction q = analytic_projection(zero_free).fn;
    const std::vector<cd> bp = blaschke_series(zeros, q.length());
    std::vector<cd> coef(q.length(), cd(0.0, 0.0));
    for (int m = 0; m < q.length(); ++m)
        for (int j = 0; j <= m; ++j) coef[m] += bp[m - j] * q.coeffs()[j];
    b.f_boundary = std::move(f);
    b.f_analytic = AnalyticFunction{std::move(coef)};
    b.residuals = verify_solution(prob, b);
}
}  // namespace

MixedProblem standard_problem(int n, const RadialFiberFamily& fibers) {
    GridFunction a(n);
    for (int k = 0; k < n; ++k) a[k] = cd(0.0, 1.0);
    return MixedProblem{std::move(a), fibers};
}

int ZeroPrescription::total_count() const {
    int c = 0;
    for (const auto& z : zeros) c += z.is_real() ? z.multiplicity : 2 * z.multiplicity;
    return c;
}

void ZeroPrescription::validate() const {
    for (const auto& z : zeros) {
        if (z.multiplicity < 1) throw std::invalid_argument("zero multiplicity must be at least 1");
        if (std::hypot(z.re, z.im) >= 1.0 - 1e-12)
            throw std::domain_error("prescribed zero must lie in the open disk");
    }
}

cd zero_multiplier(const ZeroPrescription& zp, cd xi) {
    cd m{1.0, 0.0};
    for (const auto& zero : zp.zeros) {
        const cd a{zero.re, zero.im};
        const cd ab = std::conj(a);
        for (int j = 0; j < zero.multiplicity; ++j) {
            if (zero.is_real()) {
                m *= (1.0 - a * xi) / (xi - a);
            } else {
                m *= (1.0 - ab * xi) / (xi - a) * ((1.0 - a * xi) / (xi - ab));
            }
        }
    }
    return m;
}

cd blaschke_back(const ZeroPrescription& zp, cd z) {
    cd b{1.0, 0.0};
    for (const auto& zero : zp.zeros) {
        const cd a{zero.re, zero.im};
        const cd ab = std::conj(a);
        for (int j = 0; j < zero.multiplicity; ++j) {
            if (zero.is_real()) {
                b *= (z - a) / (1.0 - a * z);
            } else {
                b *= (z - a) / (1.0 - ab * z) * ((z - ab) / (1.0 - a * z));
            }
        }
    }
    return b;
}

MixedProblem prescribe_zeros(const MixedProblem& prob, const ZeroPrescription& zp) {
    zp.validate();
    if (zp.empty()) return prob;
    std::vector<double> alpha(prob.fibers.rows());
    for (int i = 0; i < prob.fibers.rows(); ++i)
        alpha[i] = std::arg(zero_multiplier(zp, std::polar(1.0, prob.fibers.row_theta(i))));
    GridFunction a = prob.symbol;
    for (int k = 0; k < a.size(); ++k) a[k] *= zero_multiplier(zp, a.node(k));
    return MixedProblem{std::move(a), rotate_rows(prob.fibers, alpha), prob.omega_plus,
                        prob.omega_minus};
}

cd evaluate_interior(const SolutionBundle& bundle, cd z) {
    if (std::abs(z) > 1.0 + 1e-12)
        throw std::invalid_argument("evaluation point lies outside the closed disk");
    const cd psi = half_disk_map(z).psi;
    const cd f_star = branch_power(z, bundle.corner.delta_plus, 1) *
                          branch_power(z, bundle.corner.delta_minus, -1) *
                          bundle.kappa_series.evaluate(z) +
                      bundle.w_plus * (1.0 + psi) / 2.0 + bundle.w_minus * (1.0 - psi) / 2.0;
    return blaschke_back(bundle.zeros, z) * cd(0.0, -1.0) * std::exp(-bundle.h.evaluate(z)) *
           f_star;
}

double nonlinear_residual(const RadialFiberFamily& fam, const CornerData& cdata,
                          const GridFunction& psi, const GridFunction& kappa) {
    const int n = kappa.size();
    const int half = n / 2;
    const GridFunction f = assemble_f(kappa, cdata, psi);
    double sup = 0.0;
    for (int k = 1; k < half; ++k) {
        const double theta = 2.0 * kPi * k / n;
        const DefiningValues dv = eval_defining(fam, theta, f[k]);
        const double grad = std::abs(dv.rho_w);
        if (grad <= 1e-14) throw std::runtime_error("defining gradient vanishes at an iterate");
        const double weight = corner_weight(theta, cdata.delta_plus, cdata.delta_minus);
        sup = std::max(sup, std::abs(dv.rho) / (2.0 * grad * weight));
    }
    for (int k = half; k <= n; ++k) sup = std::max(sup, std::abs(f[k % n].imag()));
    return sup;
}

NewtonOutcome newton_step(const RadialFiberFamily& fam, const CornerData& cdata,
                          const GridFunction& psi, const GridFunction& kappa) {
    const int n = kappa.size();
    const double res0 = nonlinear_residual(fam, cdata, psi, kappa);
    const LinearSolution sol = solve_linear(linearize(fam, cdata, psi, kappa));
    GridFunction step = sol.particular;
    for (const auto& u : orthonormalize(sol.kernel)) {
        const double c = grid_dot(step, u);
        for (int k = 0; k < n; ++k) step[k] -= c * u[k];
    }
    NewtonOutcome out;
    out.residual_before = res0;
    for (const double frac : {1.0, 0.5, 0.25, 0.125}) {
        GridFunction trial = kappa;
        for (int k = 0; k < n; ++k) trial[k] += frac * step[k];
        double r = 0.0;
        try {
            r = nonlinear_residual(fam, cdata, psi, trial);
        } catch (const std::domain_error&) {
            continue;
        } catch (const std::runtime_error&) {
            continue;
        }
        if (r < res0 || r < 1e-12) {
            out.kappa = std::move(trial);
            out.residual_after = r;
            out.step_fraction = frac;
            return out;
        }
    }
    throw std::runtime_error("line search stalled without residual decrease");
}

SolutionBundle continuation_solve(const RadialFiberFamily& fam, int n, int steps) {
    if (steps < 8) throw std::invalid_argument("continuation needs at least 8 steps");
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument("grid size must be a power of two, at least 64");
    if (!validate_angles(fam).pass)
        throw std::domain_error("fiber angles exceed the transversality gate");

    const int nf = refined_grid(n);
    const GridFunction psi = psi_grid(nf);
    const double tol = 1e-10;
    GridFunction kappa(nf);
    std::vector<ContinuationStep> trace;
    {
        const RadialFiberFamily start = fam.isotopy_at(1.0);
        trace.push_back({1.0, 0, nonlinear_residual(start, corner_data(start), psi, kappa)});
    }
    const double h0 = 1.0 / steps;
    double h = h0;
    double t = 1.0;
    int depth = 0;
    while (t > 0.0) {
        const double target = t - h < 1e-12 ? 0.0 : t - h;
        const RadialFiberFamily cur = fam.isotopy_at(target);
        try {
            const CornerData cdata = corner_data(cur);
            GridFunction trial = kappa;
            int iters = 0;
            double res = nonlinear_residual(cur, cdata, psi, trial);
            while (res > tol) {
                if (++iters > 25)
                    throw std::runtime_error("iteration limit at a continuation step");
                NewtonOutcome out = newton_step(cur, cdata, psi, trial);
                trial = std::move(out.kappa);
                res = out.residual_after;
            }
            kappa = std::move(trial);
            t = target;
            trace.push_back({t, iters, res});
            h = std::min(h0, 2.0 * h);
            if (depth > 0) --depth;
        } catch (const std::exception&) {
            if (++depth > 12)
                throw std::runtime_error("continuation stalled near t = " + std::to_string(t));
            h *= 0.5;
        }
    }

    // The corner singularity limits collocation accuracy near the corner
    // nodes; the refined solve resolves it and the requested grid receives
    // the exact restriction (the assembly is pointwise in theta).
    const int stride = nf / n;
    GridFunction kappa_out(n);
    for (int k = 0; k < n; ++k) kappa_out[k] = kappa[k * stride];
    SolutionBundle b = assemble_bundle(fam, psi_grid(n), kappa_out, std::move(trace));
    b.residuals = verify_solution(standard_problem(n, fam), b);
    if (b.residuals.sup_residual_upper >= 1e-7 || b.residuals.sup_residual_lower >= 1e-7 ||
        b.residuals.zero_count != 0) {
        char msg[200];
        std::snprintf(msg, sizeof msg,
                      "continuation output failed self-verification: upper %.2e, lower %.2e, "
                      "analyticity %.2e, zeros %d",
                      b.residuals.sup_residual_upper, b.residuals.sup_residual_lower,
                      b.residuals.analyticity_residual, b.residuals.zero_count);
        throw std::runtime_error(msg);
    }
    return b;
}

SolutionBundle solve_mixed_problem(const MixedProblem& prob, const ZeroPrescription& zeros,
                                   int steps) {
    zeros.validate();
    const int n = prob.grid();
    const MixedProblem modified = prescribe_zeros(prob, zeros);
    StandardForm form = to_standard_form(n, modified.symbol, modified.fibers, modified.omega_plus,
                                         modified.omega_minus);
    SolutionBundle b = continuation_solve(form.fibers, n, steps);
    compose_original(b, prob, zeros, form.data.h);
    if (b.residuals.zero_count != zeros.total_count())
        throw std::runtime_error("composed solution has the wrong zero count");
    return b;
}

SolutionBundle rebuild_solution(const MixedProblem& prob, const ZeroPrescription& zeros,
                                const GridFunction& kappa) {
    zeros.validate();
    const int n = prob.grid();
    if (kappa.size() != n)
        throw std::invalid_argument("kappa grid does not match the problem grid");
    const MixedProblem modified = prescribe_zeros(prob, zeros);
    StandardForm form = to_standard_form(n, modified.symbol, modified.fibers, modified.omega_plus,
                                         modified.omega_minus);
    SolutionBundle b = assemble_bundle(form.fibers, form.data.psi, kappa, {});
    compose_original(b, prob, zeros, form.data.h);
    return b;
}

}  // namespace mrh
