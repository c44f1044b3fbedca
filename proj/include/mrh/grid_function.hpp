#pragma once

#include <complex>
#include <vector>

namespace mrh {

using cd = std::complex<double>;

bool is_power_of_two(int n);

// Samples of a function on the uniform circle grid theta_k = 2*pi*k/n.
// The grid size is a power of two and at least 64 so that corner nodes
// (theta = 0 and theta = pi) fall exactly on the grid and all transforms
// can use the radix-2 FFT.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(int n);
    GridFunction(int n, std::vector<cd> values);

    static GridFunction from_real(int n, const std::vector<double>& values);

    int size() const { return n_; }
    double theta(int k) const;
    cd node(int k) const;  // e^{i theta_k}

    cd& operator[](int k) { return v_[k]; }
    const cd& operator[](int k) const { return v_[k]; }
    const std::vector<cd>& values() const { return v_; }

    std::vector<double> real_part() const;
    std::vector<double> imag_part() const;
    double sup_norm() const;
    double max_imag_abs() const;
    bool is_real(double tol = 1e-12) const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(cd s);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(GridFunction a, cd s) { return a *= s; }
    friend GridFunction operator*(cd s, GridFunction a) { return a *= s; }

private:
    int n_ = 0;
    std::vector<cd> v_;
};

// Boundary trace of a holomorphic function on the disk, stored as the
// leading power series coefficients c_0..c_{len-1}.
class AnalyticFunction {
public:
    AnalyticFunction() = default;
    explicit AnalyticFunction(std::vector<cd> coeffs);

    const std::vector<cd>& coeffs() const { return c_; }
    int length() const { return static_cast<int>(c_.size()); }

    cd evaluate(cd z) const;          // Horner on the power series
    GridFunction trace(int n) const;  // requires length() <= n/2

private:
    std::vector<cd> c_;
};

// Unnormalized DFT bins A_m = sum_k v_k e^{-2 pi i m k / n}, m = 0..n-1.
std::vector<cd> dft_bins(const GridFunction& u);
// Inverse of dft_bins (divides by n).
GridFunction idft_bins(int n, const std::vector<cd>& bins);

}  // namespace mrh
