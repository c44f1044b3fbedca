#include "mrh/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace mrh {

namespace {

constexpr double kPi = std::numbers::pi;

// Iterative radix-2 FFT, in place. sign = -1 forward, +1 inverse (no 1/n).
void fft_pow2(std::vector<cd>& a, int sign) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / len;
        const cd wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cd u = a[i + k];
                cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

static void check_grid_size(int n) {
    if (n < 64 || !is_power_of_two(n))
        throw std::invalid_argument("grid size must be a power of two and at least 64");
}

GridFunction::GridFunction(int n) : n_(n), v_(static_cast<size_t>(n)) {
    check_grid_size(n);
}

GridFunction::GridFunction(int n, std::vector<cd> values) : n_(n), v_(std::move(values)) {
    check_grid_size(n);
    if (static_cast<int>(v_.size()) != n)
        throw std::invalid_argument("value count does not match grid size");
}

GridFunction GridFunction::from_real(int n, const std::vector<double>& values) {
    GridFunction g(n);
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("value count does not match grid size");
    for (int k = 0; k < n; ++k) g.v_[k] = cd(values[k], 0.0);
    return g;
}

double GridFunction::theta(int k) const { return 2.0 * kPi * k / n_; }

cd GridFunction::node(int k) const {
    const double t = theta(k);
    return cd(std::cos(t), std::sin(t));
}

std::vector<double> GridFunction::real_part() const {
    std::vector<double> r(v_.size());
    for (size_t k = 0; k < v_.size(); ++k) r[k] = v_[k].real();
    return r;
}

std::vector<double> GridFunction::imag_part() const {
    std::vector<double> r(v_.size());
    for (size_t k = 0; k < v_.size(); ++k) r[k] = v_[k].imag();
    return r;
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (const cd& z : v_) m = std::max(m, std::abs(z));
    return m;
}

double GridFunction::max_imag_abs() const {
    double m = 0.0;
    for (const cd& z : v_) m = std::max(m, std::abs(z.imag()));
    return m;
}

bool GridFunction::is_real(double tol) const { return max_imag_abs() <= tol; }

static void check_same_grid(int a, int b) {
    if (a != b) throw std::invalid_argument("grid sizes differ");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    check_same_grid(n_, o.n_);
    for (int k = 0; k < n_; ++k) v_[k] += o.v_[k];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    check_same_grid(n_, o.n_);
    for (int k = 0; k < n_; ++k) v_[k] -= o.v_[k];
    return *this;
}

GridFunction& GridFunction::operator*=(cd s) {
    for (int k = 0; k < n_; ++k) v_[k] *= s;
    return *this;
}

AnalyticFunction::AnalyticFunction(std::vector<cd> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(cd(0.0, 0.0));
}

cd AnalyticFunction::evaluate(cd z) const {
    cd acc(0.0, 0.0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
    return acc;
}

GridFunction AnalyticFunction::trace(int n) const {
    check_grid_size(n);
    if (length() > n / 2)
        throw std::invalid_argument("coefficient count exceeds half the grid size");
    std::vector<cd> bins(static_cast<size_t>(n), cd(0.0, 0.0));
    for (int m = 0; m < length(); ++m) bins[m] = c_[m] * static_cast<double>(n);
    return idft_bins(n, bins);
}

std::vector<cd> dft_bins(const GridFunction& u) {
    std::vector<cd> a = u.values();
    fft_pow2(a, -1);
    return a;
}

GridFunction idft_bins(int n, const std::vector<cd>& bins) {
    if (static_cast<int>(bins.size()) != n)
        throw std::invalid_argument("bin count does not match grid size");
    std::vector<cd> a = bins;
    fft_pow2(a, +1);
    const double inv = 1.0 / n;
    for (cd& z : a) z *= inv;
    return GridFunction(n, std::move(a));
}

}  // namespace mrh
