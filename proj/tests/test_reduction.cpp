#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mrh/circle_ops.hpp"
#include "mrh/fibers.hpp"
#include "mrh/reduction.hpp"

using namespace mrh;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction constant(int n, cd v) {
    GridFunction g(n);
    for (int k = 0; k < n; ++k) g[k] = v;
    return g;
}

}  // namespace

TEST_CASE("arc normalization: quarter turn and standard arc") {
    const Mobius q = normalize_arc(cd(0, 1), cd(0, -1));
    CHECK(std::abs(q.apply(cd(0, 1)) - cd(1, 0)) < 1e-12);
    CHECK(std::abs(q.apply(cd(0, -1)) - cd(-1, 0)) < 1e-12);
    // Arc midpoint (omega_minus to omega_plus through 1) goes to -i.
    CHECK(std::abs(q.apply(cd(1, 0)) - cd(0, -1)) < 1e-12);
    // The map is xi -> -i xi.
    CHECK(std::abs(q.apply(cd(0.3, 0.1)) - cd(0, -1) * cd(0.3, 0.1)) < 1e-12);

    const Mobius id = normalize_arc(cd(1, 0), cd(-1, 0));
    for (cd z : {cd(0.2, 0.4), cd(-0.7, 0.1), cd(0, 0)})
        CHECK(std::abs(id.apply(z) - z) < 1e-14);
}

TEST_CASE("arc normalization is a disk automorphism") {
    const cd wp = std::polar(1.0, 0.7);
    const cd wm = std::polar(1.0, 2.9);
    const Mobius m = normalize_arc(wp, wm);
    CHECK(std::abs(m.apply(wp) - cd(1, 0)) < 1e-12);
    CHECK(std::abs(m.apply(wm) + cd(1, 0)) < 1e-12);
    CHECK(std::abs(m.apply(std::polar(1.0, 0.5 * (2.9 + 0.7 + 2.0 * kPi))) - cd(0, -1)) < 1e-12);
    for (double t = 0.1; t < 6.2; t += 0.4)
        CHECK(std::abs(std::abs(m.apply(std::polar(1.0, t))) - 1.0) < 1e-12);
    for (cd z : {cd(0.5, 0.2), cd(-0.3, -0.6)}) {
        CHECK(std::abs(m.apply(z)) < 1.0);
        CHECK(std::abs(m.inverse().apply(m.apply(z)) - z) < 1e-12);
    }

    CHECK_THROWS_AS(normalize_arc(cd(2, 0), cd(-1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(normalize_arc(cd(1, 0), cd(1, 0)), std::invalid_argument);
}

TEST_CASE("symbol extension covers the circle without zeros or winding") {
    const int n = 128;
    GridFunction a(n);
    for (int k = 0; k < n; ++k) {
        const double t = a.theta(k);
        a[k] = std::polar(2.0 + 0.3 * std::cos(t), t);
    }
    const GridFunction ext = extend_symbol(a);
    CHECK(std::abs(ext[0] - a[0]) < 1e-14);
    for (int k = n / 2; k < n; ++k) CHECK(std::abs(ext[k] - a[k]) < 1e-14);
    for (int k = 0; k < n; ++k) CHECK(std::abs(ext[k]) > 1e-3);
    CHECK(winding_number(ext, false).two_n == 0);

    GridFunction z = a;
    z[n / 2 + 3] = 0.0;
    CHECK_THROWS_AS(extend_symbol(z), std::invalid_argument);
}

TEST_CASE("conjugate factorization of constant symbols") {
    const int n = 128;
    const auto fi = factor_conjugate_symbol(constant(n, cd(0, 1)));
    const auto fm3 = factor_conjugate_symbol(constant(n, cd(-3, 0)));
    for (int k = 0; k < n; ++k) {
        CHECK(std::abs(fi.h_grid[k] - cd(0, -kPi / 2.0)) < 1e-12);
        CHECK(std::abs(fi.r[k] - 1.0) < 1e-12);
        CHECK(std::abs(fm3.h_grid[k] - cd(0, -kPi)) < 1e-12);
        CHECK(std::abs(fm3.r[k] - 3.0) < 1e-12);
    }
    CHECK(std::abs(fi.h.evaluate(cd(0.2, 0.3)) - cd(0, -kPi / 2.0)) < 1e-12);
}

TEST_CASE("conjugate factorization reconstructs a smooth symbol") {
    const int n = 256;
    GridFunction a(n);
    for (int k = 0; k < n; ++k) {
        const double t = a.theta(k);
        a[k] = std::polar(1.5 + 0.4 * std::sin(t), 0.3 * std::cos(2.0 * t));
    }
    const auto fac = factor_conjugate_symbol(a);
    for (int k = 0; k < n; ++k) {
        CHECK(fac.r[k].real() > 0.0);
        CHECK(std::abs(fac.r[k].imag()) < 1e-14);
        CHECK(std::abs(fac.r[k] * std::exp(fac.h_grid[k]) - std::conj(a[k])) < 1e-10);
    }
    const auto pr = analytic_projection(fac.h_grid);
    CHECK(pr.discarded_energy < 1e-10 * (1.0 + pr.total_energy));

    GridFunction loop(n);
    for (int k = 0; k < n; ++k) loop[k] = loop.node(k);
    CHECK_THROWS_AS(factor_conjugate_symbol(loop), std::invalid_argument);
}

TEST_CASE("half-disk map boundary behavior") {
    CHECK(std::abs(half_disk_map(cd(0, -1)).Psi) < 1e-13);
    CHECK(std::abs(half_disk_map(cd(0, -1)).psi) < 1e-13);
    CHECK(std::abs(half_disk_map(cd(1, 0)).psi - cd(1, 0)) < 1e-13);
    CHECK(std::abs(half_disk_map(cd(-1, 0)).psi + cd(1, 0)) < 1e-13);
    CHECK_THROWS_AS(half_disk_map(cd(1.2, 0)), std::invalid_argument);

    const int n = 256;
    const GridFunction psi = psi_grid(n);
    CHECK(std::abs(psi[0] - cd(1, 0)) < 1e-13);
    CHECK(std::abs(psi[n / 2] + cd(1, 0)) < 1e-13);
    for (int k = n / 2; k < n; ++k) CHECK(std::abs(psi[k].imag()) < 1e-14);
    for (int k = 1; k < n / 2; ++k)
        CHECK(std::abs(std::abs(half_disk_map(psi.node(k)).Psi) - 1.0) < 1e-12);

    // Interior values land in the open upper half-disk.
    const HalfDiskValues center = half_disk_map(cd(0, 0));
    CHECK(std::abs(center.Psi) < 1.0);
    CHECK(center.Psi.imag() > 0.0);
}

TEST_CASE("half-disk composite is linear at the corners") {
    // psi - 1 = 3i(1 - xi) + O(|xi - 1|^{3/2}) and likewise at -1: the cubic
    // flattening kills the square-root term of Psi.
    const double u = 1e-4;
    for (double s : {u, -u}) {
        const cd xi_p = std::polar(1.0, s);
        const cd xi_m = std::polar(1.0, kPi + s);
        CHECK(std::abs(half_disk_map(xi_p).psi - 1.0 - 3.0 * cd(0, 1) * (1.0 - xi_p)) < 2e-5);
        CHECK(std::abs(half_disk_map(xi_m).psi + 1.0 - 3.0 * cd(0, 1) * (1.0 + xi_m)) < 2e-5);
    }
}

TEST_CASE("half-disk map is holomorphic in the interior") {
    const double h = 1e-5;
    for (cd z : {cd(0.3, 0.2), cd(-0.4, -0.3), cd(0.1, -0.5)}) {
        const auto at = [](cd w) { return half_disk_map(w).psi; };
        const cd dbar = (at(z + h) - at(z - h)) / (2.0 * h) +
                        cd(0, 1) * (at(z + cd(0, h)) - at(z - cd(0, h))) / (2.0 * h);
        CHECK(std::abs(dbar) < 1e-6);
    }
}

TEST_CASE("standard form of constant symbols rotates and scales fibers") {
    const int n = 128;
    const auto fam = RadialFiberFamily::radial_cos(33, 64, 0.1, 1);

    // a = i: h = -i pi/2, tau = 0, fibers unchanged.
    const StandardForm si = to_standard_form(n, constant(n, cd(0, 1)), fam, cd(1, 0), cd(-1, 0));
    for (int i = 0; i < 33; ++i)
        for (int j = 0; j < 64; ++j)
            CHECK(si.fibers.at(i, j) == doctest::Approx(fam.at(i, j)).epsilon(1e-12));
    for (int k = 0; k < n; ++k) {
        CHECK(std::abs(si.data.h_grid[k] - cd(0, -kPi / 2.0)) < 1e-12);
        CHECK(std::abs(si.data.r[k] - 1.0) < 1e-12);
    }
    CHECK(std::abs(si.data.mobius.apply(cd(0.3, 0.2)) - cd(0.3, 0.2)) < 1e-12);
    CHECK(si.data.psi.size() == n);

    // a = -3i: h = i pi/2, tau = pi, rows reflect; r = 3.
    const StandardForm sm = to_standard_form(n, constant(n, cd(0, -3)), fam, cd(1, 0), cd(-1, 0));
    for (int i = 0; i < 33; ++i)
        for (int j = 0; j < 64; ++j) {
            const double phi = 2.0 * kPi * j / 64;
            CHECK(sm.fibers.at(i, j) == doctest::Approx(-0.1 * std::cos(phi)).epsilon(1e-10));
        }
    for (int k = 0; k < n; ++k) CHECK(std::abs(sm.data.r[k] - 3.0) < 1e-12);

    // a = 2: h = 0, tau = pi/2.
    const StandardForm s2 = to_standard_form(n, constant(n, cd(2, 0)), fam, cd(1, 0), cd(-1, 0));
    for (int i = 0; i < 33; ++i)
        for (int j = 0; j < 64; ++j) {
            const double phi = 2.0 * kPi * j / 64;
            CHECK(s2.fibers.at(i, j) == doctest::Approx(0.1 * std::sin(phi)).epsilon(1e-10));
        }
}
