#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "ibs2/errors.hpp"

namespace ibs2 {

using cplx = std::complex<double>;

// Uniform n x n cell grid over [-1,1)^2. Samples live at cell centers
// x_i = -1 + (i + 1/2) h with h = 2/n, so no sample sits on |x| = 1.
// Index layout is row-major with the x index slow: idx = ix * n + iy.
struct PixelGrid {
    int n = 0;

    explicit PixelGrid(int n_) : n(n_) {
        if (n_ < 2) throw InvalidArgument("PixelGrid: n must be >= 2");
    }

    double h() const { return 2.0 / n; }
    std::size_t ncells() const { return static_cast<std::size_t>(n) * n; }
    double center(int i) const { return -1.0 + (i + 0.5) * h(); }

    // True when the cell center lies strictly inside the unit disk.
    bool inside(int ix, int iy) const {
        const double x = center(ix), y = center(iy);
        return x * x + y * y < 1.0;
    }

    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(ix) * n + iy; }

    bool operator==(const PixelGrid& o) const { return n == o.n; }
};

// Scalar field sampled at cell centers; values on cells outside the unit
// disk are kept identically zero.
template <typename T>
struct FieldT {
    PixelGrid grid;
    std::vector<T> v;

    explicit FieldT(const PixelGrid& g) : grid(g), v(g.ncells(), T{}) {}
    FieldT(const PixelGrid& g, std::vector<T> vals) : grid(g), v(std::move(vals)) {
        if (v.size() != g.ncells()) throw InvalidArgument("FieldT: value size mismatch");
    }

    T& at(int ix, int iy) { return v[grid.index(ix, iy)]; }
    const T& at(int ix, int iy) const { return v[grid.index(ix, iy)]; }

    // Zero out every cell whose center is outside the unit disk.
    void apply_mask() {
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy)
                if (!grid.inside(ix, iy)) at(ix, iy) = T{};
    }
};

using RealField = FieldT<double>;
using ComplexField = FieldT<cplx>;

ComplexField to_complex(const RealField& f);
RealField real_part(const ComplexField& f);

// Masked midpoint-rule inner products / norms over the unit disk.
double disk_norm_l2(const RealField& f);
double disk_norm_l2(const ComplexField& f);
cplx disk_inner(const ComplexField& a, const ComplexField& b);  // integral of a * conj(b)

// M equispaced unit directions theta_i = 2 pi i / M.
struct DirectionSet {
    int M = 0;
    std::vector<double> x, y;

    explicit DirectionSet(int M_);
};

// Raw far-field sample matrix u(observation i, incident j) at one frequency.
struct FarFieldMatrix {
    DirectionSet obs;
    DirectionSet inc;
    double k = 0.0;
    std::vector<cplx> u;  // row-major: u[i * inc.M + j]
    bool scaled = false;  // true once the data-side normalization is applied

    FarFieldMatrix(const DirectionSet& obs_, const DirectionSet& inc_, double k_)
        : obs(obs_), inc(inc_), k(k_), u(static_cast<std::size_t>(obs_.M) * inc_.M) {}

    cplx& at(int i, int j) { return u[static_cast<std::size_t>(i) * inc.M + j]; }
    const cplx& at(int i, int j) const { return u[static_cast<std::size_t>(i) * inc.M + j]; }
};

// Polar quadrature nodes for the closed unit disk: radii r_j = sqrt((t_j+1)/2)
// from a T-point Gauss-Legendre rule on [-1,1], angles theta_i = 2 pi i / M,
// weights w = w_t * (2 pi / M) / 4. The rule integrates f over the unit disk
// as sum w_n f(p_n).
struct PNodeSet {
    int T = 0;
    int M = 0;
    std::vector<double> radii;    // size T, increasing
    std::vector<double> thetas;   // size M
    std::vector<double> px, py;   // size T*M, node (j, i) at index j*M + i
    std::vector<double> w;        // size T*M
    std::size_t size() const { return px.size(); }
    double min_radius() const { return radii.front(); }
};

PNodeSet build_pnodes(int T, int M);

// Default node counts for wavenumber k: T = ceil(k) + 8, M = 4 T.
PNodeSet default_pnodes(double k);

// Data sampled at p-nodes (one frequency component).
struct PData {
    std::shared_ptr<const PNodeSet> nodes;
    double k = 0.0;
    std::vector<cplx> v;

    PData() = default;
    PData(std::shared_ptr<const PNodeSet> nodes_, double k_)
        : nodes(std::move(nodes_)), k(k_), v(nodes->size()) {}
};

double pdata_norm(const PData& d);  // weighted L2 norm over the disk

// Unit tangent construction q(p) = sqrt(1-|p|^2)/|p| * (-p2, p1).
// Defined for 0 < |p| <= 1; q(p) is orthogonal to p and |q|^2 + |p|^2 = 1.
struct Vec2 {
    double x = 0.0, y = 0.0;
};
Vec2 q_of_p(double px, double py);

// Data-side normalization factor sqrt(8 pi) e^{-i pi/4} k^{-3/2}.
cplx farfield_scale(double k);

// Multiply a raw far-field matrix by farfield_scale(k).
FarFieldMatrix scale_farfield(const FarFieldMatrix& raw);

// Nearest-pair assignment of scaled far-field samples to p-nodes:
// node p gets the sample (i, j) minimizing |(theta_j - xhat_i)/2 - p|,
// ties broken lexicographically by (i, j). Returns the assembled PData and
// reports the worst assignment distance.
struct MappingReport {
    double max_distance = 0.0;
};
PData map_farfield_to_pnodes(const FarFieldMatrix& scaled,
                             std::shared_ptr<const PNodeSet> nodes,
                             MappingReport* report = nullptr);

}  // namespace ibs2
