#pragma once

#include <complex>

namespace ibs2 {

// Cylinder functions and the outgoing 2-D Helmholtz Green's function.
// Arguments are validated; order is capped to keep callers honest about the
// ranges this project actually exercises.

inline constexpr int kBesselOrderMax = 200;

// Bessel function of the first kind J_m(x), m >= 0, x >= 0.
double bessel_j(int m, double x);

// Bessel function of the second kind Y_m(x), m >= 0, x > 0.
double bessel_y(int m, double x);

// Outgoing Hankel function H^(1)_m(x) = J_m(x) + i Y_m(x), m in {0, 1}, x > 0.
std::complex<double> hankel1(int m, double x);

// Green's function G(r) = (i/4) H^(1)_0(k r) for the 2-D Helmholtz operator,
// radial form, r > 0.
std::complex<double> green_value(double k, double r);

// First and second radial derivatives of G:
//   g'(r)  = -(i k / 4) H^(1)_1(k r)
//   g''(r) = -(i k^2 / 4) (H^(1)_0(k r) - H^(1)_1(k r) / (k r))
struct GreenDerivs {
    std::complex<double> g1;  // g'
    std::complex<double> g2;  // g''
};
GreenDerivs green_derivs(double k, double r);

// Integral of G over a centered square cell [-h/2, h/2]^2, evaluated from the
// closed-form radial antiderivative of rho H^(1)_0(k rho) plus a smooth 1-D
// angular quadrature. Finite despite the log singularity at the origin.
std::complex<double> green_cell_integral(double k, double h);

// Integral of G(0, y) over the unit disk: 2 pi (i/4) [H^(1)_1(k)/k + 2i/(pi k^2)].
std::complex<double> green_disk_integral(double k);

}  // namespace ibs2
