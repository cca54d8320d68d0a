#pragma once

#include <memory>
#include <vector>

#include "ibs2/grids.hpp"
#include "ibs2/pswf.hpp"

namespace ibs2 {

// Coefficients of a field in the retained prolate basis:
// coef[e] = <f, psi_e>_B (disk inner product).
struct SpectralCoeffs {
    std::shared_ptr<const PswfBasis> basis;
    std::vector<cplx> coef;
};

// Restricted Fourier transform
//   F^k(f)(p) = integral_B e^{i 2 k p.y} f(y) dy,
// evaluated at every p-node by the masked midpoint rule on the pixel grid.
PData apply_Fk(const ComplexField& f, std::shared_ptr<const PNodeSet> nodes, double k);
PData apply_Fk(const RealField& f, std::shared_ptr<const PNodeSet> nodes, double k);

// Basis functions rasterized on a pixel grid (masked), one field per entry.
// Built once and shared: rasterization dominates the cost of projections.
struct BasisRaster {
    std::shared_ptr<const PswfBasis> basis;
    PixelGrid grid;
    std::vector<RealField> fields;
};
BasisRaster rasterize_basis(std::shared_ptr<const PswfBasis> basis, const PixelGrid& grid);

// Basis functions tabulated at p-nodes: values[e][n] = psi_e(p_n).
struct BasisNodeTable {
    std::shared_ptr<const PswfBasis> basis;
    std::shared_ptr<const PNodeSet> nodes;
    std::vector<std::vector<double>> values;
};
BasisNodeTable tabulate_basis(std::shared_ptr<const PswfBasis> basis,
                              std::shared_ptr<const PNodeSet> nodes);

// Projection onto the retained span. Pixel-field inputs use the masked
// midpoint rule; node data use the PNodeSet quadrature weights. Node data
// must match the basis bandwidth (c = 2k) or invalid-argument is thrown.
SpectralCoeffs project(const ComplexField& f, const BasisRaster& raster);
SpectralCoeffs project(const RealField& f, const BasisRaster& raster);
SpectralCoeffs project(const PData& g, const BasisNodeTable& table);
SpectralCoeffs project(const ComplexField& f, std::shared_ptr<const PswfBasis> basis);
SpectralCoeffs project(const PData& g, std::shared_ptr<const PswfBasis> basis);

// Spectral-cutoff pseudo-inverse
//   (F^k)^dag(g) = sum_retained (1 / alpha_{m,n}) <g, psi_mnl>_B psi_mnl,
// rasterized onto the pixel grid. Output stays complex; the caller decides
// whether to take the real part.
ComplexField pseudo_inverse_Fk(const PData& g, const BasisNodeTable& table,
                               const BasisRaster& raster);
ComplexField pseudo_inverse_Fk(const PData& g, std::shared_ptr<const PswfBasis> basis,
                               const PixelGrid& grid);

// Synthesis from coefficients: sum_e coef[e] * psi_e on the grid.
ComplexField synthesize_from_coeffs(const SpectralCoeffs& sc, const BasisRaster& raster);

// Lower bound d(k) = 2 sqrt(min(k, 2)) / k for |alpha_00(2k)|.
double norm_lower_bound(double k);

}  // namespace ibs2
