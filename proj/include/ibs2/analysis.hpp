#pragma once

#include <string>

#include "ibs2/grids.hpp"

namespace ibs2 {

// Closed-form operator-norm coefficients (|B| = pi substituted):
//   a(k) = sqrt(2k+1) / (2k)                           (Green kernel L2 bound)
//   b(k) = sqrt(pi) (3/(2 k^{3/2}) + sqrt(8 pi/3)) k^{1/2}
//   c(k) = k^2 b(k)
// Valid for k > 1/2; smaller k violates the hypothesis and throws.
struct AbcBounds {
    double a = 0.0, b = 0.0, c = 0.0;
};
AbcBounds bound_abc(double k);

// Recursion constants:
//   mu0(k)  = max(1, k b(k), c(k)/k, k^2 sqrt(pi) a(k))
//   nu_inf  = sqrt(2) pi
//   mu_inf  = sqrt(2) (mu0(k) + mu0(ell k))
struct MuConstants {
    double mu0_k = 0.0, mu0_lk = 0.0, nu_inf = 0.0, mu_inf = 0.0;
};
MuConstants mu_constants(double k, double ell);

// Super-level-set measure: the smaller of the areas where each contrast
// reaches half its maximum, counted on the pixel grid. A field that is
// identically zero on the disk has no well-defined measure.
double measure_M(const RealField& gamma, const RealField& eta);

// Norm bound of the regularized first inverse: k / (2 tau~ sqrt(min(k,2)))
// with tau~ = alpha_tilde epsilon^2 (1 - ell^{-2}).
double k1dag_norm_bound(double k, double ell, double alpha_tilde, double epsilon);

// Convergence radius r = (2 mu (sqrt(16 C^2 + 1) + 4 C))^{-1},
// C = max(2, nu * k1dag_norm).
double radius(double mu, double nu, double k1dag_norm);

// Collected constants and radii for one configuration. M <= 0 marks the
// measure (and everything derived from it) as unavailable.
struct BoundsReport {
    double k = 0.0, ell = 0.0;
    double alpha_tilde = 0.0, epsilon = 0.0;
    double a_k = 0.0, b_k = 0.0, c_k = 0.0;
    double mu0_k = 0.0, mu0_lk = 0.0;
    double nu_inf = 0.0, mu_inf = 0.0;
    double M = 0.0;
    double nu2 = 0.0, mu2 = 0.0;
    double d_k = 0.0;                // lower bound for ||F^k||
    double alpha = 0.0;              // spectral cutoff actually in force
    double k1dag_bound = 0.0;
    double C_K1 = 0.0;               // nu2 * k1dag_bound
    double C2 = 0.0;                 // max(2, C_K1)
    double radius_l2 = 0.0;          // explicit-radius formula with (mu2, nu2)
    double radius_inf = 0.0;         // same with (mu_inf, nu_inf)
    double radius_lower_thm2 = 0.0;  // fully explicit frequency-scaling lower bound
    double proof_c_r_inf = 0.0;      // (18 sqrt2 (3 sqrt(pi) + 2 pi/sqrt3) pi)^{-1}
    double proof_c_r_2 = 0.0;        // (72 sqrt2 (3 sqrt(pi) + 2 pi/sqrt3) pi)^{-1}
    double smallness_gate_rhs = 0.0; // mu2^{-1}(1 - sqrt(1 - (1+C_K1)^{-1}))
};

// Assemble the report. alpha00_abs is the measured |alpha_00| of the basis
// in force; pass 0 to fall back to the lower bound d(k). M <= 0 leaves the
// measure-dependent entries zero.
BoundsReport compute_bounds(double k, double ell, double alpha_tilde, double epsilon, double M,
                            double alpha00_abs = 0.0);

// Pretty-printed JSON document of a report (stable key order, exact doubles).
std::string bounds_to_json(const BoundsReport& r);

// Truncated-series error bound:
//   2 mu2 (sqrt(16 C2^2 + 1)(1 - C_ratio))^{-1} C_ratio^{N+1}
//   + (1 + (1 - (1 - mu2 Mscript)^{-2}) C_K1)^{-1}
//       (3^{-1/2} pi alpha^{-1} epsilon Mscript + delta_alpha).
// Applicable only when C_ratio < 1 and Mscript is below the smallness gate;
// otherwise the result is flagged, not thrown.
struct ErrorBoundResult {
    double value = 0.0;
    bool applicable = false;
    std::string reason;
};
ErrorBoundResult error_bound(int N, double mu2, double C2, double C_K1, double C_ratio,
                             double Mscript, double alpha, double epsilon, double delta_alpha);

// Relative L2(B) errors of a reconstruction pair against the truth pair.
// A zero-norm truth component switches that entry to an absolute error and
// sets the flag.
struct RelErrors {
    double e_gamma = 0.0, e_eta = 0.0, e_joint = 0.0;
    bool absolute_gamma = false, absolute_eta = false;
};
RelErrors rel_l2_error(const RealField& gamma_true, const RealField& eta_true,
                       const RealField& gamma_est, const RealField& eta_est);
RelErrors rel_l2_error(const RealField& gamma_true, const RealField& eta_true,
                       const ComplexField& gamma_est, const ComplexField& eta_est);

}  // namespace ibs2
