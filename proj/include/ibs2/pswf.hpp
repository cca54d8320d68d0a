#pragma once

#include <complex>
#include <vector>

#include "ibs2/grids.hpp"

namespace ibs2 {

// Generalized prolate spheroidal basis on the unit disk, built by a
// Galerkin discretization of the commuting Sturm-Liouville operator
//   D_c = -(1-r^2) d2/dr2 - (1/r) d/dr + 3 r d/dr + m^2/r^2 + c^2 r^2
// in the orthonormal Zernike radial basis
//   Rbar_{m,j}(r) = sqrt(2(m+2j+1)) (-1)^j r^m P_j^{(m,0)}(1-2r^2).
// Each radial eigenfunction R_{m,n} pairs with angular factors
//   1/sqrt(2 pi)            (m = 0)
//   cos(m t)/sqrt(pi)       (m >= 1, l = 1)
//   sin(m t)/sqrt(pi)       (m >= 1, l = 2)
// and satisfies  integral_B e^{i c p.y} psi(y) dy = alpha_{m,n} psi(p).

struct PswfEntry {
    int m = 0;               // angular order
    int n = 0;               // radial index (ascending Sturm-Liouville eigenvalue)
    int l = 1;               // angular component: 1 = cos, 2 = sin (m >= 1 only)
    double chi = 0.0;        // Sturm-Liouville eigenvalue
    cplx alpha;              // Fourier eigenvalue
    double residual = 0.0;   // eigen-relation residual in L2(B)
    std::vector<double> coeffs;  // Zernike radial coefficients, size J(m)
};

struct PswfBasis {
    double c = 0.0;            // bandwidth parameter (c = 2k)
    double alpha_tilde = 0.0;  // retention threshold relative to |alpha_00|
    cplx alpha00;              // Fourier eigenvalue of the (0,0) mode
    std::vector<PswfEntry> entries;  // sorted by |alpha| desc, then (m, n, l)

    double cutoff() const { return alpha_tilde * std::abs(alpha00); }
};

struct PswfCaps {
    int m_max = 0;  // 0 means automatic (derived from c)
    int n_max = 0;  // 0 means automatic
};

// Galerkin matrix of D_c in the Zernike radial basis for angular order m,
// truncation J, assembled with Gauss-Legendre quadrature and symmetrized.
// Throws AssemblyFailure if quadrature refinement moves any entry by more
// than 1e-10.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;  // row-major
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};
Matrix assemble_sturm_liouville(int m, double c, int J);

// Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix.
// Each eigenvector is sign-normalized so its first significant entry is
// positive.
struct EigResult {
    std::vector<double> values;
    Matrix vectors;  // columns are eigenvectors
};
EigResult solve_radial_eigs(const Matrix& A);

// Radial profile R_{m,n}(r) of one entry, evaluated at arbitrary radii.
std::vector<double> eval_radial(const PswfEntry& e, const std::vector<double>& r);

// Full surface function psi_{m,n,l} at polar points (r, theta).
std::vector<double> eval_pswf(const PswfEntry& e, const std::vector<double>& r,
                              const std::vector<double>& theta);

// Rasterize one entry onto the cell centers of a pixel grid (masked).
RealField rasterize_pswf(const PswfEntry& e, const PixelGrid& grid);

// Fourier eigenvalue alpha for a candidate radial eigenfunction: evaluates
// F^k psi by the Jacobi-Anger reduction to a 1-D Bessel integral, then forms
// the weighted least-squares ratio over the supplied p-nodes:
//   alpha = sum_n w_n conj(psi(p_n)) (F psi)(p_n) / sum_n w_n |psi(p_n)|^2.
// Also returns the L2(B) residual ||F psi - alpha psi|| over the node rule.
struct EigenvalueFit {
    cplx alpha;
    double residual = 0.0;
};
EigenvalueFit prolate_eigenvalue(int m, const std::vector<double>& coeffs, double c,
                                 const PNodeSet& nodes);

// Build the retained basis at bandwidth c: keep modes with
// |alpha_{m,n}| >= alpha_tilde |alpha_00|, scanning n upward per m (|alpha|
// decreases in n) and m upward until two consecutive orders retain nothing.
// Residuals above resid_tol * |alpha_00| reject the eigenpair; hitting a cap
// while the retention rule still fires raises CapTooSmall.
PswfBasis build_basis(double c, double alpha_tilde, const PNodeSet& nodes,
                      PswfCaps caps = {}, double resid_tol = 1e-4);

}  // namespace ibs2
