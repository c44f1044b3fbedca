#pragma once

#include "mrh/fibers.hpp"
#include "mrh/grid_function.hpp"

namespace mrh {

// Signed transition angles at xi = +1 and xi = -1, each in (-1,0) or (0,1).
// The exponent of the corner factor is 1 - beta for positive beta and
// |beta| for negative beta.
struct CornerAngles {
    double beta_plus = 0.5;
    double beta_minus = -0.5;

    double delta_plus() const;
    double delta_minus() const;
    void validate() const;
};

// Corner data of a fiber family in standard form: the linear condition is
// the real axis and both transition points sit on the positive real axis.
struct CornerData {
    double w_plus = 1.0;      // fiber point over theta = 0
    double w_minus = 1.0;     // fiber point over theta = pi
    double beta_plus = 0.5;   // in (0, 1)
    double beta_minus = -0.5; // in (-1, 0)
    double delta_plus = 0.5;
    double delta_minus = 0.5;
    double beta_cap = 0.5 - 1e-3;

    CornerAngles angles() const { return CornerAngles{beta_plus, beta_minus}; }
};

// Transition angles from the endpoint fibers; the tangent at the positive
// real intersection w_j = exp(lam(theta_j, 0)) makes angle
// atan2(R, R') with the real axis. Rejects near-tangential intersections.
CornerData corner_data(const RadialFiberFamily& fam);

// (xi - 1)^delta with arg(xi - 1) in (pi/2, 3pi/2), or (xi + 1)^delta with
// arg(xi + 1) in (-pi/2, pi/2); corner = +1 or -1 selects the factor.
// Returns 0 at the corner itself.
cd branch_power(cd xi, double delta, int corner);

// |xi-1|^{d1} |xi+1|^{dm1} at xi = e^{i theta}; vanishes at theta = 0, pi.
double corner_weight(double theta, double d1, double dm1);

// Unimodular phase of the product of both branch factors at e^{i theta}.
// The (xi+1) branch jumps at xi = -1; lower_arc selects the lower-side
// sheet (theta in [pi, 2pi], with theta = 2pi for the lower side of xi = 1).
cd corner_phase(double theta, double d1, double dm1, bool lower_arc = false);

// Full corner factor P(e^{i theta}) = weight * phase; P(corners) = 0.
cd corner_factor(double theta, double d1, double dm1);

// f = P kappa + w_plus (1+psi)/2 + w_minus (1-psi)/2 on the grid.
GridFunction assemble_f(const GridFunction& kappa, const CornerData& cdata, const GridFunction& psi);

// Inverse substitution; the two corner nodes are filled by quadratic
// extrapolation since P vanishes there. Requires f to be pinned at the
// corners to 1e-6.
GridFunction extract_kappa(const GridFunction& f, const CornerData& cdata, const GridFunction& psi);

// T_1 = (xi-1)/(i(xi+1)) for corner +1, T_{-1} = i(xi+1)/(xi-1) for
// corner -1; both are positive on the open upper arc and equal -1 at -i.
cd corner_t(cd xi, int corner);

struct RhoTildeValues {
    double value = 0.0;
    cd w_derivative;
};

// Desingularized defining function: rho tilde_j = T_j^{-delta_j} *
// rho(theta, P(xi) w + blend(xi)), blended across the upper arc by a fixed
// C^2 cutoff (1 below pi/3, 0 above 2pi/3). Upper arc only, corners excluded.
RhoTildeValues build_rho_tilde(const RadialFiberFamily& fam, const CornerData& cdata, double theta,
                               cd w);

}  // namespace mrh
