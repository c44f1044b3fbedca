#pragma once

#include <vector>

#include "mrh/corners.hpp"
#include "mrh/fibers.hpp"
#include "mrh/grid_function.hpp"
#include "mrh/reduction.hpp"

namespace mrh {

// Mixed boundary value problem in arc-normalized coordinates: find f
// holomorphic on the disk with Re(conj(a) f) = 0 on the closed lower
// semicircle and f(e^{i theta}) on the fiber over theta on the upper arc.
// `symbol` holds a on the solve grid; only the lower-arc nodes are read.
struct MixedProblem {
    GridFunction symbol;
    RadialFiberFamily fibers;
    cd omega_plus{1.0, 0.0};   // original arc endpoints, for bookkeeping
    cd omega_minus{-1.0, 0.0};

    int grid() const { return symbol.size(); }
};

MixedProblem standard_problem(int n, const RadialFiberFamily& fibers);

struct PrescribedZero {
    double re = 0.0;
    double im = 0.0;  // a nonzero imaginary part implies the conjugate zero too
    int multiplicity = 1;

    bool is_real() const { return im == 0.0; }
};

struct ZeroPrescription {
    std::vector<PrescribedZero> zeros;

    bool empty() const { return zeros.empty(); }
    int total_count() const;  // conjugate partners counted
    void validate() const;    // points in the open disk, multiplicities >= 1
};

// Unimodular-on-the-circle multiplier whose reciprocal carries the zeros:
// each real zero contributes ((1 - z xi)/(xi - z))^m, each complex zero the
// conjugate-symmetric pair factor.
cd zero_multiplier(const ZeroPrescription& zp, cd xi);
// 1/multiplier: the Blaschke product vanishing at the prescribed zeros.
cd blaschke_back(const ZeroPrescription& zp, cd z);

// Rotates the fibers row-by-row by arg(multiplier) and co-rotates the
// symbol so that solutions of the modified problem, divided by the
// multiplier, solve the original problem with the prescribed zeros.
MixedProblem prescribe_zeros(const MixedProblem& prob, const ZeroPrescription& zp);

struct ResidualReport {
    double sup_residual_upper = 0.0;   // sup |rho(xi, f)| / (2 |rho_w| weight)
    double sup_residual_lower = 0.0;   // sup |Re(conj(a) f)| / |a| on L
    double analyticity_residual = 0.0; // negative-spectrum energy fraction
    int zero_count = 0;
    double holder_fit_plus = 0.0;
    double holder_fit_minus = 0.0;
    double beta_cap = 0.0;
    bool pass = false;  // both boundary residuals < 1e-6, analyticity < 1e-8
};

struct ContinuationStep {
    double t = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

// Solution of a mixed problem plus everything needed to evaluate it inside
// the disk: f(z) = blaschke_back(zeros, z) * (-i e^{-h(z)}) * f_star(z),
// f_star(z) = (z-1)^{d1} (z+1)^{dm1} kappa(z) + w+ (1+psi)/2 + w- (1-psi)/2.
struct SolutionBundle {
    GridFunction f_boundary;
    AnalyticFunction f_analytic;  // projection of f_boundary, for reporting
    GridFunction kappa;           // standard-form corner coordinate, nodal
    CornerData corner;            // of the standard-form family solved
    ResidualReport residuals;
    std::vector<ContinuationStep> trace;
    int index_two_n = 0;  // doubled winding of the final linearization

    ZeroPrescription zeros;
    AnalyticFunction h;  // factorization exponent of the reduced symbol
    AnalyticFunction kappa_series;
    double w_plus = 1.0;   // standard-form endpoint values
    double w_minus = 1.0;
};

cd evaluate_interior(const SolutionBundle& bundle, cd z);

// Sup over the grid of the weighted fiber misfit on the upper arc and
// |Im f_star| on the lower arc, for f_star = assemble_f(kappa).
double nonlinear_residual(const RadialFiberFamily& fam, const CornerData& cdata,
                          const GridFunction& psi, const GridFunction& kappa);

struct NewtonOutcome {
    GridFunction kappa;
    double residual_before = 0.0;
    double residual_after = 0.0;
    double step_fraction = 1.0;
};

// One damped Newton update of kappa for the standard-form problem on the
// family fam: linearize the fiber condition at f_n = assemble_f(kappa),
// solve the linear problem, take the minimal-norm representative, and
// backtrack on the sup residual with fractions 1, 1/2, 1/4, 1/8.
NewtonOutcome newton_step(const RadialFiberFamily& fam, const CornerData& cdata,
                          const GridFunction& psi, const GridFunction& kappa);

// Continuity method for the standard-form problem on fam: slide the family
// to round circles (kappa = 0 is exact there), then track the solution back
// to t = 0 with warm-started Newton and adaptive step bisection. The
// returned bundle is self-verified against the standard problem.
SolutionBundle continuation_solve(const RadialFiberFamily& fam, int n, int steps = 16);

// Full pipeline: prescribe zeros, reduce the symbol, run the continuation,
// compose the solution back, and verify against the original problem.
SolutionBundle solve_mixed_problem(const MixedProblem& prob, const ZeroPrescription& zeros,
                                   int steps = 16);

// Rebuilds the composed bundle from a stored standard-form kappa without
// running Newton, and re-verifies it; used to re-check saved solutions.
SolutionBundle rebuild_solution(const MixedProblem& prob, const ZeroPrescription& zeros,
                                const GridFunction& kappa);

}  // namespace mrh
