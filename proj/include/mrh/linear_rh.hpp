#pragma once

#include <vector>

#include "mrh/corners.hpp"
#include "mrh/grid_function.hpp"

namespace mrh {

// Re(b_tilde_coeff * kappa) = rhs on the grid; two_n is twice the winding
// of the conjugate coefficient (the classifying index), odd iff the
// coefficient closes onto its negative at the seam xi = 1.
struct LinearRHProblem {
    GridFunction b_tilde_coeff;
    GridFunction rhs;
    int two_n = 0;
    bool half = false;
};

// Assembles the full-circle coefficient from upper-arc samples of B
// (nodes 0..n/2 inclusive) and the corner angles: conj(B)/|B| times the
// unimodular corner phases above, +-i times the phases below, the lower
// sign chosen for continuity at -1 (plus iff beta_minus < 0). rhs_upper
// holds the weighted right-hand side at nodes 0..n/2; rhs_lower, if given,
// at nodes n/2+1..n-1 (defaults to zero there, as in the reduced problem).
LinearRHProblem build_linear_problem(const std::vector<cd>& B_upper,
                                     const std::vector<double>& rhs_upper,
                                     const CornerAngles& angles,
                                     const std::vector<double>& rhs_lower = {});

LinearRHProblem build_linear_problem(const std::vector<cd>& B_upper,
                                     const std::vector<double>& rhs_upper, const CornerData& cdata,
                                     const std::vector<double>& rhs_lower = {});

struct LinearSolution {
    GridFunction particular;                 // nodal values, residual-exact
    std::vector<GridFunction> kernel;        // real basis of the nullspace
    AnalyticFunction particular_series;      // band-limited projections
    std::vector<AnalyticFunction> kernel_series;
    double residual = 0.0;                   // sup |Re(coeff*particular) - rhs|
};

// Fourier-space solve. Integer index N >= 0 matches rhs bins 0..n/2-1-N and
// spans a (2N+1)-dimensional kernel; index -1/2 is lifted to the double
// cover where it becomes integer -1 and the solve matches every bin of the
// grid. Fails for index < -1/2.
LinearSolution solve_linear(const LinearRHProblem& prob);

}  // namespace mrh
