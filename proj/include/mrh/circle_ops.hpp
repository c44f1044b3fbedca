#pragma once

#include "mrh/grid_function.hpp"

namespace mrh {

// Conjugate function of a real grid function, normalized so H(1) = 0.
// The DC and Nyquist multipliers vanish, so the output is real whenever
// the input is and H(cos k theta) = sin k theta for 0 < k < n/2.
GridFunction hilbert_transform(const GridFunction& u);

struct AnalyticProjection {
    AnalyticFunction fn;      // coefficients c_0..c_{n/2-1}
    double discarded_energy;  // 2*pi * sum of |c_m|^2 over dropped bins
    double total_energy;      // 2*pi * sum of |c_m|^2 over all bins
};

// Keeps only nonnegative frequencies below the Nyquist bin.
AnalyticProjection analytic_projection(const GridFunction& u);

struct DoubledWinding {
    int two_n = 0;  // twice the winding number
    bool half = false;

    double value() const { return two_n / 2.0; }
};

// Winding of a nonvanishing grid function around 0, counted over one
// revolution. Consecutive samples must turn by less than pi/2. A seam
// offset near pi is read as a half-integer winding when allow_half is set.
DoubledWinding winding_number(const GridFunction& u, bool allow_half);

// Least-squares slope of log modulus-of-continuity against log scale at
// node `center`, over dyadic offsets 1,2,4,..,radius. Clamped to [0,1.5];
// a locally constant function reports 1.5.
double holder_estimate(const GridFunction& u, int center, int radius);

// (sum_k |u_k|^p * 2*pi/n)^(1/p), the rectangle rule for the L^p norm.
double lp_norm(const GridFunction& u, double p);

}  // namespace mrh
