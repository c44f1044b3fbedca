#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "mrh/fibers.hpp"

using namespace mrh;

namespace {

constexpr double kPi = std::numbers::pi;

// lam(theta, phi) = c * sin(phi) on every row.
RadialFiberFamily sine_family(int m, int p, double c) {
    std::vector<double> lam(static_cast<size_t>(m) * p);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < p; ++j) lam[static_cast<size_t>(i) * p + j] = c * std::sin(2.0 * kPi * j / p);
    return RadialFiberFamily(m, p, lam);
}

}  // namespace

TEST_CASE("fiber family shape validation") {
    CHECK_THROWS_AS(RadialFiberFamily(32, 64, std::vector<double>(32 * 64, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(RadialFiberFamily(31, 64, std::vector<double>(31 * 64, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(RadialFiberFamily(33, 48, std::vector<double>(33 * 48, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(RadialFiberFamily(33, 64, std::vector<double>(10, 0.0)),
                    std::invalid_argument);
    CHECK_NOTHROW(RadialFiberFamily(33, 64, std::vector<double>(33 * 64, 0.0)));
    CHECK_THROWS_AS(RadialFiberFamily::circles(33, 64, -1.0), std::invalid_argument);
}

TEST_CASE("circle preset is constant") {
    const auto fam = RadialFiberFamily::circles(33, 64, 2.5);
    CHECK(fam.max_row_variation() < 1e-15);
    for (double theta : {0.0, 0.3, 2.0, kPi})
        for (double phi : {0.0, 1.1, 5.0}) {
            CHECK(fam.radius(theta, phi) == doctest::Approx(2.5).epsilon(1e-14));
            const LamJet j = fam.lam_jet(theta, phi);
            CHECK(std::abs(j.lam_theta) < 1e-12);
            CHECK(std::abs(j.lam_phi) < 1e-12);
        }
    const auto v = validate_angles(fam);
    CHECK(v.pass);
    CHECK(v.endpoint_sup < 1e-13);
}

TEST_CASE("jet partials match finite differences of the interpolant") {
    const auto fam = RadialFiberFamily::radial_cos(33, 128, 0.2, 3);
    const double h = 1e-5;
    for (double theta : {0.4, 1.7, 2.9})
        for (double phi : {0.25, 2.0, 4.4}) {
            const LamJet j = fam.lam_jet(theta, phi);
            const double dt =
                (fam.lam_jet(theta + h, phi).lam - fam.lam_jet(theta - h, phi).lam) / (2.0 * h);
            const double dp =
                (fam.lam_jet(theta, phi + h).lam - fam.lam_jet(theta, phi - h).lam) / (2.0 * h);
            CHECK(j.lam_theta == doctest::Approx(dt).epsilon(1e-5));
            CHECK(j.lam_phi == doctest::Approx(dp).epsilon(1e-5));
        }
}

TEST_CASE("radial presets match their closed forms") {
    const double eps = 0.15;
    const auto fc = RadialFiberFamily::radial_cos(33, 64, eps, 2);
    for (int i : {0, 16, 32}) {
        const auto d = fc.row_phi_derivative(i);
        for (int j = 0; j < fc.cols(); ++j) {
            const double phi = 2.0 * kPi * j / fc.cols();
            CHECK(fc.at(i, j) == doctest::Approx(eps * std::cos(2.0 * phi)).epsilon(1e-13));
            CHECK(d[j] == doctest::Approx(-2.0 * eps * std::sin(2.0 * phi)).epsilon(1e-12));
        }
    }

    const auto ft = RadialFiberFamily::radial_theta(33, 64, eps);
    CHECK(ft.max_row_variation() < 1e-15);
    for (int i = 0; i < ft.rows(); ++i)
        CHECK(ft.at(i, 0) == doctest::Approx(eps * std::cos(ft.row_theta(i))).epsilon(1e-13));
    CHECK(ft.row_theta(0) == 0.0);
    CHECK(ft.row_theta(ft.rows() - 1) == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("defining gradient satisfies the radial identity") {
    const auto fam = RadialFiberFamily::radial_cos(33, 128, 0.2, 3);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> th(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> rr(0.4, 1.8);
    for (int trial = 0; trial < 40; ++trial) {
        const double theta = th(rng);
        const cd w = std::polar(rr(rng), ph(rng));
        const LamJet j = fam.lam_jet(theta, std::arg(w));
        const double R2 = std::exp(2.0 * j.lam);
        const DefiningValues dv = eval_defining(fam, theta, w);
        CHECK(dv.rho == doctest::Approx(std::norm(w) - R2).epsilon(1e-12));
        // w * rho_w = |w|^2 + i R^2 lam_phi.
        CHECK(std::abs(w * dv.rho_w - cd(std::norm(w), R2 * j.lam_phi)) < 1e-11);
        CHECK(dv.rho_theta == doctest::Approx(-2.0 * R2 * j.lam_theta).epsilon(1e-10));
    }
    CHECK_THROWS_AS(eval_defining(fam, -0.1, cd(1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(eval_defining(fam, 1.0, cd(0, 0)), std::domain_error);
}

TEST_CASE("angle field on the fiber equals atan of the slope") {
    const auto fam = RadialFiberFamily::radial_cos(33, 128, 0.2, 3);
    for (double theta : {0.5, 1.6})
        for (double phi : {0.0, 1.3, 3.9}) {
            const LamJet j = fam.lam_jet(theta, phi);
            const cd w = std::polar(std::exp(j.lam), phi);
            CHECK(angle_field_d(fam, theta, w) ==
                  doctest::Approx(std::atan(j.lam_phi)).epsilon(1e-10));
        }
    CHECK_THROWS_AS(angle_field_d(fam, 1.0, cd(0, 0)), std::domain_error);
    CHECK_THROWS_AS(angle_field_d(fam, 1.0, cd(5.0, 0.0)), std::domain_error);
}

TEST_CASE("row rotation shifts band-limited rows exactly") {
    const double eps = 0.15;
    const auto fam = RadialFiberFamily::radial_cos(33, 64, eps, 2);
    std::vector<double> alpha(33);
    for (int i = 0; i < 33; ++i) alpha[i] = 0.3 + 0.01 * i;
    const auto rot = rotate_rows(fam, alpha);
    for (int i = 0; i < 33; ++i)
        for (int j = 0; j < 64; ++j) {
            const double phi = 2.0 * kPi * j / 64;
            CHECK(rot.at(i, j) ==
                  doctest::Approx(eps * std::cos(2.0 * (phi - alpha[i]))).epsilon(1e-12));
        }
    CHECK_THROWS_AS(rotate_rows(fam, std::vector<double>(5, 0.0)), std::invalid_argument);
}

TEST_CASE("isotopy slides onto the mean circle") {
    const auto fam = RadialFiberFamily::radial_cos(33, 64, 0.2, 3);
    double mean = 0.0;
    for (double v : fam.data()) mean += v;
    mean /= static_cast<double>(fam.data().size());

    const auto end = fam.isotopy_at(1.0);
    CHECK(end.max_row_variation() < 1e-14);
    for (double v : end.data()) CHECK(v == doctest::Approx(mean).epsilon(1e-14));

    const auto start = fam.isotopy_at(0.0);
    for (size_t k = 0; k < fam.data().size(); ++k)
        CHECK(start.data()[k] == doctest::Approx(fam.data()[k]).epsilon(1e-15));

    const auto mid = fam.isotopy_at(0.5);
    for (size_t k = 0; k < fam.data().size(); ++k)
        CHECK(mid.data()[k] == doctest::Approx(0.5 * (fam.data()[k] + mean)).epsilon(1e-14));

    CHECK_THROWS_AS(fam.isotopy_at(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(fam.isotopy_at(1.5), std::invalid_argument);
}

TEST_CASE("angle validation thresholds") {
    const auto steep = validate_angles(sine_family(33, 64, 0.5));
    CHECK_FALSE(steep.pass);
    CHECK(steep.endpoint_sup == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(steep.beta0 == doctest::Approx(2.0 / kPi * std::atan(0.5)).epsilon(1e-12));

    const auto shallow = validate_angles(sine_family(33, 64, 0.2));
    CHECK(shallow.pass);
    CHECK(shallow.endpoint_sup == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(shallow.all_row_sup == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("fiber csv round trip") {
    const auto fam = RadialFiberFamily::radial_cos(33, 64, 0.1, 1);
    const std::string path = "fibers_roundtrip_test.csv";
    fam.write_csv(path);
    const auto back = RadialFiberFamily::read_csv(path);
    REQUIRE(back.rows() == fam.rows());
    REQUIRE(back.cols() == fam.cols());
    for (size_t k = 0; k < fam.data().size(); ++k)
        CHECK(back.data()[k] == doctest::Approx(fam.data()[k]).epsilon(1e-12));
    std::remove(path.c_str());
    CHECK_THROWS_AS(RadialFiberFamily::read_csv("no_such_fiber_file.csv"), std::runtime_error);
}
