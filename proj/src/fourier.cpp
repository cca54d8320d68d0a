#include "ibs2/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace ibs2 {

namespace {

void check_bandwidth(const PswfBasis& basis, double k) {
    if (std::abs(basis.c - 2.0 * k) > 1e-9 * std::max(1.0, basis.c))
        throw InvalidArgument("fourier: basis bandwidth c does not match 2k of the data");
}

}  // namespace

PData apply_Fk(const ComplexField& f, std::shared_ptr<const PNodeSet> nodes, double k) {
    if (!nodes) throw InvalidArgument("apply_Fk: null node set");
    if (k <= 0.0) throw InvalidArgument("apply_Fk: k must be positive");
    const int n = f.grid.n;
    ComplexField g = f;
    g.apply_mask();

    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = f.grid.center(i);

    PData out(nodes, k);
    const double h2 = f.grid.h() * f.grid.h();
    std::vector<cplx> phx(n), phy(n);
    for (std::size_t nd = 0; nd < nodes->size(); ++nd) {
        const double ax = 2.0 * k * nodes->px[nd];
        const double ay = 2.0 * k * nodes->py[nd];
        for (int i = 0; i < n; ++i) {
            phx[i] = std::polar(1.0, ax * xs[i]);
            phy[i] = std::polar(1.0, ay * xs[i]);
        }
        cplx s = 0.0;
        for (int ix = 0; ix < n; ++ix) {
            const cplx* row = &g.v[static_cast<std::size_t>(ix) * n];
            cplx acc = 0.0;
            for (int iy = 0; iy < n; ++iy) acc += row[iy] * phy[iy];
            s += phx[ix] * acc;
        }
        out.v[nd] = h2 * s;
    }
    return out;
}

PData apply_Fk(const RealField& f, std::shared_ptr<const PNodeSet> nodes, double k) {
    return apply_Fk(to_complex(f), std::move(nodes), k);
}

BasisRaster rasterize_basis(std::shared_ptr<const PswfBasis> basis, const PixelGrid& grid) {
    if (!basis) throw InvalidArgument("rasterize_basis: null basis");
    BasisRaster r{basis, grid, {}};
    r.fields.reserve(basis->entries.size());
    for (const PswfEntry& e : basis->entries) r.fields.push_back(rasterize_pswf(e, grid));
    return r;
}

BasisNodeTable tabulate_basis(std::shared_ptr<const PswfBasis> basis,
                              std::shared_ptr<const PNodeSet> nodes) {
    if (!basis || !nodes) throw InvalidArgument("tabulate_basis: null input");
    BasisNodeTable t{basis, nodes, {}};
    const std::size_t N = nodes->size();
    std::vector<double> r(N), th(N);
    for (int j = 0; j < nodes->T; ++j)
        for (int i = 0; i < nodes->M; ++i) {
            r[static_cast<std::size_t>(j) * nodes->M + i] = nodes->radii[j];
            th[static_cast<std::size_t>(j) * nodes->M + i] = nodes->thetas[i];
        }
    t.values.reserve(basis->entries.size());
    for (const PswfEntry& e : basis->entries) t.values.push_back(eval_pswf(e, r, th));
    return t;
}

SpectralCoeffs project(const ComplexField& f, const BasisRaster& raster) {
    if (!(f.grid == raster.grid)) throw InvalidArgument("project: grid mismatch");
    SpectralCoeffs sc{raster.basis, {}};
    sc.coef.reserve(raster.fields.size());
    const double h2 = f.grid.h() * f.grid.h();
    const int n = f.grid.n;
    for (const RealField& psi : raster.fields) {
        cplx acc = 0.0;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) {
                const std::size_t id = f.grid.index(ix, iy);
                if (psi.v[id] != 0.0) acc += f.v[id] * psi.v[id];
            }
        sc.coef.push_back(h2 * acc);
    }
    return sc;
}

SpectralCoeffs project(const RealField& f, const BasisRaster& raster) {
    return project(to_complex(f), raster);
}

SpectralCoeffs project(const PData& g, const BasisNodeTable& table) {
    if (!g.nodes) throw InvalidArgument("project: data has no node set");
    if (g.nodes.get() != table.nodes.get() && g.nodes->size() != table.nodes->size())
        throw InvalidArgument("project: node set mismatch");
    check_bandwidth(*table.basis, g.k);
    SpectralCoeffs sc{table.basis, {}};
    sc.coef.reserve(table.values.size());
    const PNodeSet& nd = *table.nodes;
    for (const std::vector<double>& psi : table.values) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < nd.size(); ++i) acc += nd.w[i] * g.v[i] * psi[i];
        sc.coef.push_back(acc);
    }
    return sc;
}

SpectralCoeffs project(const ComplexField& f, std::shared_ptr<const PswfBasis> basis) {
    return project(f, rasterize_basis(std::move(basis), f.grid));
}

SpectralCoeffs project(const PData& g, std::shared_ptr<const PswfBasis> basis) {
    return project(g, tabulate_basis(std::move(basis), g.nodes));
}

ComplexField pseudo_inverse_Fk(const PData& g, const BasisNodeTable& table,
                               const BasisRaster& raster) {
    if (table.basis.get() != raster.basis.get())
        throw InvalidArgument("pseudo_inverse_Fk: table and raster use different bases");
    check_bandwidth(*table.basis, g.k);
    SpectralCoeffs sc = project(g, table);
    for (std::size_t e = 0; e < sc.coef.size(); ++e) sc.coef[e] /= table.basis->entries[e].alpha;
    return synthesize_from_coeffs(sc, raster);
}

ComplexField pseudo_inverse_Fk(const PData& g, std::shared_ptr<const PswfBasis> basis,
                               const PixelGrid& grid) {
    BasisNodeTable t = tabulate_basis(basis, g.nodes);
    BasisRaster r = rasterize_basis(basis, grid);
    return pseudo_inverse_Fk(g, t, r);
}

ComplexField synthesize_from_coeffs(const SpectralCoeffs& sc, const BasisRaster& raster) {
    if (sc.basis.get() != raster.basis.get())
        throw InvalidArgument("synthesize_from_coeffs: basis mismatch");
    if (sc.coef.size() != raster.fields.size())
        throw InvalidArgument("synthesize_from_coeffs: coefficient count mismatch");
    ComplexField out(raster.grid);
    for (std::size_t e = 0; e < sc.coef.size(); ++e) {
        const cplx c = sc.coef[e];
        if (c == cplx(0.0)) continue;
        const std::vector<double>& psi = raster.fields[e].v;
        for (std::size_t id = 0; id < psi.size(); ++id)
            if (psi[id] != 0.0) out.v[id] += c * psi[id];
    }
    return out;
}

double norm_lower_bound(double k) {
    if (k <= 0.0) throw InvalidArgument("norm_lower_bound: k must be positive");
    return 2.0 * std::sqrt(std::min(k, 2.0)) / k;
}

}  // namespace ibs2
