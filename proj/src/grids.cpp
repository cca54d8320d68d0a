#include "ibs2/grids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ibs2 {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence (standard Golub-Welsch-free construction).
void gauss_legendre(int T, std::vector<double>& t, std::vector<double>& w) {
    t.assign(T, 0.0);
    w.assign(T, 0.0);
    const int mid = (T + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Chebyshev-based initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (T + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= T; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = T * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        t[i] = -x;
        t[T - 1 - i] = x;
        const double wi = 2.0 / ((1.0 - x * x) * dp * dp);
        w[i] = wi;
        w[T - 1 - i] = wi;
    }
}

}  // namespace

ComplexField to_complex(const RealField& f) {
    ComplexField out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = f.v[i];
    return out;
}

RealField real_part(const ComplexField& f) {
    RealField out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = f.v[i].real();
    return out;
}

double disk_norm_l2(const RealField& f) {
    const double cell = f.grid.h() * f.grid.h();
    double s = 0.0;
    for (int ix = 0; ix < f.grid.n; ++ix)
        for (int iy = 0; iy < f.grid.n; ++iy)
            if (f.grid.inside(ix, iy)) {
                const double v = f.at(ix, iy);
                s += v * v;
            }
    return std::sqrt(s * cell);
}

double disk_norm_l2(const ComplexField& f) {
    const double cell = f.grid.h() * f.grid.h();
    double s = 0.0;
    for (int ix = 0; ix < f.grid.n; ++ix)
        for (int iy = 0; iy < f.grid.n; ++iy)
            if (f.grid.inside(ix, iy)) s += std::norm(f.at(ix, iy));
    return std::sqrt(s * cell);
}

cplx disk_inner(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid == b.grid)) throw InvalidArgument("disk_inner: grid mismatch");
    const double cell = a.grid.h() * a.grid.h();
    cplx s = 0.0;
    for (int ix = 0; ix < a.grid.n; ++ix)
        for (int iy = 0; iy < a.grid.n; ++iy)
            if (a.grid.inside(ix, iy)) s += a.at(ix, iy) * std::conj(b.at(ix, iy));
    return s * cell;
}

DirectionSet::DirectionSet(int M_) : M(M_) {
    if (M_ < 1) throw InvalidArgument("DirectionSet: M must be >= 1");
    x.resize(M);
    y.resize(M);
    for (int i = 0; i < M; ++i) {
        const double a = 2.0 * std::numbers::pi * i / M;
        x[i] = std::cos(a);
        y[i] = std::sin(a);
    }
}

PNodeSet build_pnodes(int T, int M) {
    if (T < 1 || M < 1) throw InvalidArgument("build_pnodes: T and M must be >= 1");
    PNodeSet P;
    P.T = T;
    P.M = M;
    std::vector<double> t, wt;
    gauss_legendre(T, t, wt);
    P.radii.resize(T);
    for (int j = 0; j < T; ++j) P.radii[j] = std::sqrt((t[j] + 1.0) / 2.0);
    P.thetas.resize(M);
    std::vector<double> ct(M), st(M);
    for (int i = 0; i < M; ++i) {
        P.thetas[i] = 2.0 * std::numbers::pi * i / M;
        ct[i] = std::cos(P.thetas[i]);
        st[i] = std::sin(P.thetas[i]);
    }
    P.px.resize(static_cast<std::size_t>(T) * M);
    P.py.resize(P.px.size());
    P.w.resize(P.px.size());
    const double wfac = 2.0 * std::numbers::pi / M / 4.0;
    for (int j = 0; j < T; ++j)
        for (int i = 0; i < M; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * M + i;
            P.px[idx] = P.radii[j] * ct[i];
            P.py[idx] = P.radii[j] * st[i];
            P.w[idx] = wt[j] * wfac;
        }
    return P;
}

PNodeSet default_pnodes(double k) {
    if (!(k > 0)) throw InvalidArgument("default_pnodes: k must be positive");
    const int T = static_cast<int>(std::ceil(k)) + 8;
    return build_pnodes(T, 4 * T);
}

double pdata_norm(const PData& d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.v.size(); ++i) s += d.nodes->w[i] * std::norm(d.v[i]);
    return std::sqrt(s);
}

Vec2 q_of_p(double px, double py) {
    const double r2 = px * px + py * py;
    if (!(r2 > 0.0) || r2 > 1.0 + 1e-12)
        throw InvalidArgument("q_of_p: requires 0 < |p| <= 1");
    const double r = std::sqrt(r2);
    const double f = std::sqrt(std::max(0.0, 1.0 - r2)) / r;
    return {-f * py, f * px};
}

cplx farfield_scale(double k) {
    if (!(k > 0)) throw InvalidArgument("farfield_scale: k must be positive");
    const double mag = std::sqrt(8.0 * std::numbers::pi) / (k * std::sqrt(k));
    const double c = std::numbers::sqrt2 / 2.0;  // cos(pi/4) = sin(pi/4)
    return mag * cplx(c, -c);
}

FarFieldMatrix scale_farfield(const FarFieldMatrix& raw) {
    if (raw.scaled) throw InvalidArgument("scale_farfield: data already scaled");
    FarFieldMatrix out = raw;
    const cplx s = farfield_scale(raw.k);
    for (auto& u : out.u) u *= s;
    out.scaled = true;
    return out;
}

PData map_farfield_to_pnodes(const FarFieldMatrix& scaled,
                             std::shared_ptr<const PNodeSet> nodes,
                             MappingReport* report) {
    if (!scaled.scaled)
        throw InvalidArgument("map_farfield_to_pnodes: input must be scaled first");
    PData out(nodes, scaled.k);
    double worst = 0.0;
    for (std::size_t n = 0; n < nodes->size(); ++n) {
        const double pxn = nodes->px[n], pyn = nodes->py[n];
        double best = std::numeric_limits<double>::infinity();
        int bi = 0, bj = 0;
        for (int i = 0; i < scaled.obs.M; ++i) {
            for (int j = 0; j < scaled.inc.M; ++j) {
                const double cx = 0.5 * (scaled.inc.x[j] - scaled.obs.x[i]);
                const double cy = 0.5 * (scaled.inc.y[j] - scaled.obs.y[i]);
                const double dx = cx - pxn, dy = cy - pyn;
                const double d2 = dx * dx + dy * dy;
                // Strict < keeps the lexicographically first (i, j) on ties.
                if (d2 < best) {
                    best = d2;
                    bi = i;
                    bj = j;
                }
            }
        }
        out.v[n] = scaled.at(bi, bj);
        worst = std::max(worst, std::sqrt(best));
    }
    if (report) report->max_distance = worst;
    return out;
}

}  // namespace ibs2
