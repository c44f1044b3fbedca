#pragma once

#include "mrh/fibers.hpp"
#include "mrh/grid_function.hpp"

namespace mrh {

// Disk automorphism (a xi + b) / (c xi + d).
struct Mobius {
    cd a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    cd apply(cd xi) const;
    Mobius inverse() const { return Mobius{d, -b, -c, a}; }
};

// Automorphism sending omega_plus to 1, omega_minus to -1, and the arc
// traversed positively from omega_minus to omega_plus onto the lower
// semicircle (its midpoint to -i).
Mobius normalize_arc(cd omega_plus, cd omega_minus);

// Extends a symbol given on the closed lower arc (nodes with Im xi <= 0,
// including both corners) to a nonvanishing function on the whole circle
// with winding 0, by C^1 Hermite blending of log-modulus and argument.
GridFunction extend_symbol(const GridFunction& a_on_lower);

struct SymbolFactorization {
    GridFunction r;       // positive real, conj(a) = r e^h on the circle
    AnalyticFunction h;   // zero negative spectrum
    GridFunction h_grid;  // boundary samples of h
};

// Writes conj(a) = r e^h for a nonvanishing winding-zero symbol.
SymbolFactorization factor_conjugate_symbol(const GridFunction& a_ext);

struct HalfDiskValues {
    cd Psi;  // biholomorphism of the disk onto the upper half-disk
    cd psi;  // F(Psi) with F(x) = x(3 - x^2)/2; real on the lower arc
};

// Psi = (s-1)/(s+1), s the principal square root of i(1+xi)/(1-xi).
// Boundary points are detected and evaluated through an exactly-real
// intermediate so psi is real on the lower arc to machine precision.
HalfDiskValues half_disk_map(cd xi);

// psi sampled on the grid.
GridFunction psi_grid(int n);

// Everything recorded by the reduction to standard form, enough to pull a
// standard-coordinates solution back: f = -i e^{-h} f_star.
struct ReductionData {
    Mobius mobius;
    AnalyticFunction h;
    GridFunction h_grid;
    GridFunction r;
    GridFunction psi;
};

struct StandardForm {
    RadialFiberFamily fibers;  // transformed by multiplication with i e^h
    ReductionData data;
};

// Internal collocation resolution for a requested grid: refined enough to
// resolve the corner singularities to the verification tolerances, capped so
// the work stays bounded.
int refined_grid(int n);

// Composes arc normalization, symbol extension and factorization, and the
// fiber transform lam*(theta, phi) = lam(theta, phi - tau) + Re h(theta)
// with tau = pi/2 + Im h(theta). The fibers are resampled to one row per
// refined-grid collocation node first, so the transform is exact there.
StandardForm to_standard_form(int n, const GridFunction& symbol_on_lower,
                              const RadialFiberFamily& fibers, cd omega_plus, cd omega_minus);

}  // namespace mrh
