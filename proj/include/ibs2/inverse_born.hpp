#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ibs2/analysis.hpp"
#include "ibs2/born_forward.hpp"
#include "ibs2/fourier.hpp"

namespace ibs2 {

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
};

// Two-frequency linearization matrix
//   A(p) = [ 2|p|^2 - 1          1 ]
//          [ 2 ell^{-2}|p|^2 - 1 1 ],
// rank one at p = 0, det = 2|p|^2 (1 - ell^{-2}).
Mat2 A_matrix(double px, double py, double ell);

// Regularized inverse
//   A^dag(p) = ell^2 / (2 max(eps,|p|)^2 (ell^2-1)) [ 1                  -1        ]
//                                                   [ 1 - 2 ell^{-2}|p|^2  2|p|^2-1 ];
// the prefactor uses max(eps, |p|), the entries the true |p|. Exact inverse
// of A(p) whenever |p| >= eps.
Mat2 A_dagger(double px, double py, double ell, double epsilon);

struct ReconParams {
    double alpha_tilde = 0.9;  // spectral cutoff fraction (basis retention)
    double epsilon = 0.0;      // <= 0 selects the smallest node radius
    int N = 1;                 // truncation order of the inverse series
    // Frequency pair used to evaluate the inner data operators of term j >= 2;
    // entry j-2 applies to term j, missing entries default to the data pair.
    std::vector<std::pair<double, double>> term_frequencies;
    // When set, the series is also run with real-projected term inputs and
    // the joint difference of the final sums is recorded.
    bool real_projected_diagnostic = false;
};

struct ReconResult {
    std::vector<std::pair<ComplexField, ComplexField>> terms;         // psi_1..psi_N
    std::vector<std::pair<ComplexField, ComplexField>> partial_sums;  // running sums
    std::vector<double> term_norms;      // ||psi_j|| in (L2(B))^2
    std::vector<double> imag_residuals;  // ||Im psi_j||
    std::vector<double> ratios;          // term_norms[j] / term_norms[j-1]
    int N_requested = 0;
    int N_completed = 0;
    bool truncated = false;  // a higher term diverged; series cut at N_completed
    std::string warning;
    double epsilon_used = 0.0;
    double real_projection_delta = -1.0;  // joint diff of the diagnostic rerun

    // Reported contrasts: real parts of the final partial sum.
    RealField gamma() const { return real_part(partial_sums.back().first); }
    RealField eta() const { return real_part(partial_sums.back().second); }
};

// Regularized first inverse K1^dag = (F^k)^dag o A^dag applied to a raw data
// pair on shared nodes (lower-level entry point; d1/d2 are the two frequency
// components).
std::pair<ComplexField, ComplexField> K1_dagger_apply(const PData& d1, const PData& d2,
                                                      double ell, double epsilon,
                                                      const BasisNodeTable& table,
                                                      const BasisRaster& raster);

// K1^dag on a dataset: basis must be built at c = 2k for the dataset's lower
// frequency. Returns the pair (gamma_1, eta_1).
std::pair<ComplexField, ComplexField> K1_dagger(const ScatterDataset& phi,
                                                std::shared_ptr<const PswfBasis> basis,
                                                const ReconParams& params,
                                                const PixelGrid& grid);

// Truncated regularized inverse series:
//   psi_1 = K1^dag(phi),
//   psi_j = -K1^dag( sum_{m=2}^{j} sum_{i_1+...+i_m=j} K_m(psi_{i_1},...,psi_{i_m}) ).
// Inner operators are evaluated by the generalized forward recursion at the
// term's configured frequency pair with shared prefix states; K1^dag always
// acts with the data pair's frequencies. N > 12 is refused; a divergent
// inner evaluation truncates the series at the previous term with a warning.
ReconResult ibs_reconstruct(const ScatterDataset& phi, std::shared_ptr<const PswfBasis> basis,
                            const ReconParams& params, const PixelGrid& grid,
                            KernelCache* cache = nullptr);

// Convergence diagnostics against computed bounds.
struct ConvergenceReport {
    double psi1_norm = 0.0;
    double radius = 0.0;   // radius in force (L2 form when available)
    double C_ratio = 0.0;  // psi1_norm / radius
    std::vector<double> term_ratios;
    bool predicted_convergent = false;
    bool empirical_divergence = false;  // ratio > 1 three times in a row
};
ConvergenceReport convergence_diagnostics(const ReconResult& result, const BoundsReport& bounds);

// Joint (L2)^2 norm of a term pair.
double pair_norm(const ComplexField& a, const ComplexField& b);

}  // namespace ibs2
