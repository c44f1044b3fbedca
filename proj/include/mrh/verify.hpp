#pragma once

#include "mrh/solver.hpp"

namespace mrh {

// Re-derives every report field of a claimed solution against the problem:
// weighted fiber misfit on the open upper arc, line-condition misfit on the
// closed lower arc, negative-spectrum energy fraction of the boundary trace,
// zero count by the argument principle on the circle of radius 1 - 2/n, and
// Holder-exponent fits of f near the corners.
ResidualReport verify_solution(const MixedProblem& prob, const SolutionBundle& bundle);

// Independent closed-form solve for families whose fibers are all circles
// centered at 0 (lam independent of phi): g = log f satisfies Im g = 0 on
// the lower arc and Re g = lam(theta, 0) above, a linear problem with a
// unique solution. Returns the boundary trace of f = e^g.
GridFunction log_oracle_solve(const RadialFiberFamily& fam, int n);

struct ZygmundCheck {
    double lhs = 0.0;  // ||e^{Hu}||_p
    double rhs = 0.0;  // (2 pi / cos(p ||u||_inf))^{1/p}
    bool pass = false;
};

// Conjugate-function exponential bound for real u with p ||u||_inf < pi/2.
ZygmundCheck zygmund_check(const GridFunction& u, double p);

}  // namespace mrh
