#include "ibs2/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "ibs2/errors.hpp"

namespace ibs2 {

double bessel_j(int m, double x) {
    if (m < 0 || m > kBesselOrderMax)
        throw InvalidArgument("bessel_j: order out of range");
    if (!(x >= 0.0)) throw InvalidArgument("bessel_j: requires x >= 0");
    return boost::math::cyl_bessel_j(m, x);
}

double bessel_y(int m, double x) {
    if (m < 0 || m > kBesselOrderMax)
        throw InvalidArgument("bessel_y: order out of range");
    if (!(x > 0.0)) throw InvalidArgument("bessel_y: requires x > 0");
    return boost::math::cyl_neumann(m, x);
}

std::complex<double> hankel1(int m, double x) {
    if (m != 0 && m != 1) throw InvalidArgument("hankel1: order must be 0 or 1");
    if (!(x > 0.0)) throw InvalidArgument("hankel1: requires x > 0");
    return {boost::math::cyl_bessel_j(m, x), boost::math::cyl_neumann(m, x)};
}

std::complex<double> green_value(double k, double r) {
    if (!(k > 0.0)) throw InvalidArgument("green_value: k must be positive");
    const std::complex<double> h0 = hankel1(0, k * r);
    return std::complex<double>(0.0, 0.25) * h0;
}

GreenDerivs green_derivs(double k, double r) {
    if (!(k > 0.0)) throw InvalidArgument("green_derivs: k must be positive");
    const std::complex<double> h0 = hankel1(0, k * r);
    const std::complex<double> h1 = hankel1(1, k * r);
    const std::complex<double> ik4(0.0, 0.25 * k);
    GreenDerivs d;
    d.g1 = -ik4 * h1;
    d.g2 = -std::complex<double>(0.0, 0.25 * k * k) * (h0 - h1 / (k * r));
    return d;
}

namespace {

// integral_0^R rho H^(1)_0(k rho) d rho = R H^(1)_1(k R)/k + 2i/(pi k^2),
// using (x H_1)' = x H_0 and x H^(1)_1(x) -> -2i/pi as x -> 0.
std::complex<double> radial_h0_integral(double k, double R) {
    return R * hankel1(1, k * R) / k +
           std::complex<double>(0.0, 2.0 / (std::numbers::pi * k * k));
}

}  // namespace

std::complex<double> green_cell_integral(double k, double h) {
    if (!(k > 0.0) || !(h > 0.0))
        throw InvalidArgument("green_cell_integral: k and h must be positive");
    // By 8-fold symmetry, integrate the radial antiderivative over
    // theta in [0, pi/4] with boundary R(theta) = (h/2)/cos(theta).
    // The integrand is smooth, so a fixed Gauss-Legendre rule suffices.
    static constexpr int Q = 48;
    static const struct Rule {
        double x[Q], w[Q];
        Rule() {
            // Newton iteration on the Legendre recurrence.
            for (int i = 0; i < Q; ++i) {
                double t = std::cos(std::numbers::pi * (i + 0.75) / (Q + 0.5));
                double dp = 0.0;
                for (int it = 0; it < 100; ++it) {
                    double p0 = 1.0, p1 = t;
                    for (int j = 2; j <= Q; ++j) {
                        const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = Q * (t * p1 - p0) / (t * t - 1.0);
                    const double dt = p1 / dp;
                    t -= dt;
                    if (std::abs(dt) < 1e-15) break;
                }
                x[i] = t;
                w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
            }
        }
    } rule;
    const double a = std::numbers::pi / 8.0;  // half-width of [0, pi/4]
    std::complex<double> s = 0.0;
    for (int i = 0; i < Q; ++i) {
        const double theta = a * (rule.x[i] + 1.0);
        const double R = (h / 2.0) / std::cos(theta);
        s += rule.w[i] * radial_h0_integral(k, R);
    }
    s *= a;      // scale quadrature to [0, pi/4]
    s *= 8.0;    // 8 symmetric sectors
    return std::complex<double>(0.0, 0.25) * s;
}

std::complex<double> green_disk_integral(double k) {
    if (!(k > 0.0)) throw InvalidArgument("green_disk_integral: k must be positive");
    return std::complex<double>(0.0, 0.25) * 2.0 * std::numbers::pi *
           radial_h0_integral(k, 1.0);
}

}  // namespace ibs2
