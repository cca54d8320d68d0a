#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "ibs2/grids.hpp"
#include "ibs2/specfun.hpp"

using namespace ibs2;
namespace {
constexpr double kPi = std::numbers::pi;

// Independent oracle: truncated ascending series for J_m.
double bessel_j_series(int m, double x) {
    double term = 1.0;
    for (int i = 1; i <= m; ++i) term *= x / (2.0 * i);
    double sum = term;
    for (int s = 1; s <= 40; ++s) {
        term *= -(x * x / 4.0) / (s * (m + s));
        sum += term;
    }
    return sum;
}
}  // namespace

TEST_SUITE_BEGIN("specfun");

TEST_CASE("Bessel J matches its ascending series") {
    CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bessel_j(3, 0.0) == doctest::Approx(0.0));
    for (int m : {0, 1, 2, 5, 9})
        for (double x : {0.1, 0.7, 1.9, 4.2, 8.5})
            CHECK(bessel_j(m, x) == doctest::Approx(bessel_j_series(m, x)).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_j(-1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(bessel_j(kBesselOrderMax + 1, 1.0), InvalidArgument);
}

TEST_CASE("Wronskian of J and Y") {
    for (int m : {0, 1, 4})
        for (double x : {0.3, 1.1, 2.7, 6.4, 13.0}) {
            const double w = bessel_j(m + 1, x) * bessel_y(m, x) - bessel_j(m, x) * bessel_y(m + 1, x);
            CHECK(w == doctest::Approx(2.0 / (kPi * x)).epsilon(1e-12));
        }
    CHECK_THROWS_AS(bessel_y(0, 0.0), InvalidArgument);
}

TEST_CASE("Hankel function composition") {
    for (int m : {0, 1})
        for (double x : {0.5, 2.0, 7.3}) {
            const auto h = hankel1(m, x);
            CHECK(h.real() == doctest::Approx(bessel_j(m, x)).epsilon(1e-14));
            CHECK(h.imag() == doctest::Approx(bessel_y(m, x)).epsilon(1e-14));
        }
}

TEST_CASE("Green value and radial derivatives") {
    const double k = 5.0;
    for (double r : {0.05, 0.3, 1.2}) {
        const auto g = green_value(k, r);
        const auto h = hankel1(0, k * r);
        CHECK(std::abs(g - cplx(0, 0.25) * h) < 1e-15);

        // central differences of the value
        const double dr = 1e-5;
        const auto d1_fd = (green_value(k, r + dr) - green_value(k, r - dr)) / (2.0 * dr);
        const auto d2_fd =
            (green_value(k, r + dr) - 2.0 * g + green_value(k, r - dr)) / (dr * dr);
        const GreenDerivs d = green_derivs(k, r);
        CHECK(std::abs(d.g1 - d1_fd) < 1e-6 * std::max(1.0, std::abs(d.g1)));
        CHECK(std::abs(d.g2 - d2_fd) < 1e-4 * std::max(1.0, std::abs(d.g2)));
    }
}

TEST_CASE("cell integral of the Green function") {
    // Brute-force midpoint refinement over K x K subcells (even K avoids the
    // singular center). The real part of G is harmonic away from 0, so the
    // midpoint rule is extremely accurate off the four central subcells.
    const double k = 5.0, h = 2.0 / 64;
    const int K = 500;
    const double w = h / K;
    cplx brute = 0.0;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            const double x = -h / 2 + (i + 0.5) * w;
            const double y = -h / 2 + (j + 0.5) * w;
            brute += green_value(k, std::hypot(x, y));
        }
    brute *= w * w;
    const cplx exact = green_cell_integral(k, h);
    CHECK(std::abs(exact - brute) < 1e-6 * std::abs(exact));
}

TEST_CASE("disk integral of the Green function") {
    // Substitution r = s^2 turns the weak log singularity into s^3 log s,
    // integrated by a fine midpoint rule.
    const double k = 7.0;
    const int K = 64000;
    cplx acc = 0.0;
    for (int i = 0; i < K; ++i) {
        const double s = (i + 0.5) / K;
        acc += green_value(k, s * s) * (s * s) * (2.0 * s);
    }
    acc *= 2.0 * kPi / K;
    const cplx closed = green_disk_integral(k);
    CHECK(std::abs(closed - acc) < 1e-7 * std::abs(closed));
}

TEST_SUITE_END();
