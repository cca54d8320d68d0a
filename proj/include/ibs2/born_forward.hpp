#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ibs2/grids.hpp"

namespace ibs2 {

// Current state of the scattered-field recursion for one incidence parameter
// p and frequency k: the field u^s_j, its gradient, and bookkeeping. At order
// 0 the state holds the incident wave u = e^{ik(q+p).y}, grad = ik(q+p) u,
// restricted to the disk (all later products are supported there anyway).
struct FieldState {
    ComplexField u, ux, uy;
    int order = 0;
    double k = 0.0;
    double px = 0.0, py = 0.0;   // incidence parameter p
    double thx = 0.0, thy = 0.0; // incident direction q + p
    double obx = 0.0, oby = 0.0; // observation direction q - p
    double ref_norm = 0.0;       // ||u_1||_{L2(B)}, set after the first step

    FieldState(const PixelGrid& g) : u(g), ux(g), uy(g) {}
};

FieldState initial_state(const PixelGrid& grid, double px, double py, double k);

// Discrete Fourier transforms of the truncated convolution kernels for the
// volume operators on a pad*n padded grid:
//   F0(f)  = k^2 integral_B G f          (scalar -> scalar)
//   F1(f)  = integral_B grad_x G . f     (vector -> scalar)
//   F2(f)  = grad F0                     (scalar -> vector)
//   F3(f)  = grad F1                     (vector -> vector)
// Kernels are truncated at physical lag |d| < 2 (the disk diameter), so the
// circular convolution agrees with the true convolution for disk-supported
// inputs. The singular lag-0 cell uses the exact local integral of G for F0
// and a finite-part value for F3; odd kernels vanish at lag 0.
struct ConvKernelSet {
    double k = 0.0;
    PixelGrid grid;
    int pad = 2;
    int P = 0;  // padded size = pad * n
    std::vector<cplx> s0, s1x, s1y, s2x, s2y, s3xx, s3xy, s3yy;

    ConvKernelSet(double k_, const PixelGrid& g, int pad_) : k(k_), grid(g), pad(pad_) {}
};

ConvKernelSet build_kernels(double k, const PixelGrid& grid, int pad = 2);

// Shared store of kernel sets keyed by (frequency, grid size, pad).
class KernelCache {
public:
    std::shared_ptr<const ConvKernelSet> get(double k, const PixelGrid& grid, int pad = 2);

private:
    std::map<std::tuple<double, int, int>, std::shared_ptr<const ConvKernelSet>> store_;
};

ComplexField apply_F0(const ConvKernelSet& ker, const ComplexField& f);
ComplexField apply_F1(const ConvKernelSet& ker, const ComplexField& fx, const ComplexField& fy);
std::pair<ComplexField, ComplexField> apply_F2(const ConvKernelSet& ker, const ComplexField& f);
std::pair<ComplexField, ComplexField> apply_F3(const ConvKernelSet& ker, const ComplexField& fx,
                                               const ComplexField& fy);

// One step of the scattered-field recursion with per-step contrasts:
//   u_{j+1} = F1(gamma grad u_j) + F0(eta u_j)
//   grad u_{j+1} = F3(gamma grad u_j) + F2(eta u_j).
// Throws DivergenceDetected when ||u_{j+1}|| > 1e6 ||u_1||.
FieldState born_step(const FieldState& s, const ComplexField& gamma, const ComplexField& eta,
                     const ConvKernelSet& ker);
FieldState born_step(const FieldState& s, const RealField& gamma, const RealField& eta,
                     const ConvKernelSet& ker);

// Far-field increment of order state.order + 1:
//   u_j(p;k) = (i/k) S[gamma (q-p).grad u] + S[eta u],
// where S[f] = h^2 sum_cells e^{ik(p-q).y} f(y).
cplx farfield_term(const FieldState& s, const ComplexField& gamma, const ComplexField& eta);
cplx farfield_term(const FieldState& s, const RealField& gamma, const RealField& eta);

// Two-frequency scattering data on a shared node set: component 1 holds
// u(p; k) at the nodes, component 2 holds u(p/ell; ell k).
struct ScatterDataset {
    std::shared_ptr<const PNodeSet> nodes;
    double k = 0.0;
    double ell = 0.0;
    PData comp1, comp2;
    std::vector<std::uint8_t> converged1, converged2;  // per node
    std::vector<double> term_norms1, term_norms2;      // weighted norm per order
    std::string provenance;

    bool all_converged() const;
};

// Forward synthesis by the truncated scattered-field series: per node and per
// frequency the recursion runs until the far-field increment falls below
// tol * |partial sum| or J_max orders are reached; non-converged nodes are
// flagged, a norm blow-up raises DivergenceDetected naming the node.
ScatterDataset synthesize(const RealField& gamma, const RealField& eta, double k, double ell,
                          std::shared_ptr<const PNodeSet> nodes, int J_max = 20,
                          double tol = 1e-8, KernelCache* cache = nullptr);

// Additive complex Gaussian noise rescaled so that per frequency component
// ||delta||_2 = level * ||component||_2 (plain vector norms); seeded and
// reproducible.
ScatterDataset add_noise(const ScatterDataset& data, double level, std::uint64_t seed);

// Multilinear data operator K_m on an ordered argument tuple of m contrast
// pairs: argument t supplies the contrasts of recursion step t, the last
// argument enters the far-field integral. Returns the two-frequency data
// pair evaluated at (k, ell k); per-node recursions as in synthesize.
std::pair<PData, PData> apply_Km(const std::vector<const ComplexField*>& gammas,
                                 const std::vector<const ComplexField*>& etas, double k,
                                 double ell, std::shared_ptr<const PNodeSet> nodes,
                                 KernelCache& cache, int pad = 2);

}  // namespace ibs2
