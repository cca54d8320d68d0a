#include "ibs2/born_forward.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ibs2/rng.hpp"
#include "ibs2/specfun.hpp"
#include "fft.hpp"

namespace ibs2 {

namespace {

using detail::CBuf;
using detail::Fft2D;

// Zero-padded copy of an n x n field into the top-left corner of a P x P
// buffer, followed by an unnormalized forward transform.
CBuf padded_fft(const ComplexField& f, int P) {
    const int n = f.grid.n;
    CBuf b(static_cast<std::size_t>(P) * P);
    for (int ix = 0; ix < n; ++ix) {
        const cplx* src = &f.v[static_cast<std::size_t>(ix) * n];
        cplx* dst = b.data() + static_cast<std::size_t>(ix) * P;
        std::copy(src, src + n, dst);
    }
    Fft2D::get(P).forward(b.data());
    return b;
}

// Inverse transform of a spectral buffer and extraction of the n x n corner,
// masked to the disk.
ComplexField extract_field(CBuf& b, const PixelGrid& grid, int P) {
    Fft2D::get(P).inverse(b.data());
    ComplexField out(grid);
    const int n = grid.n;
    for (int ix = 0; ix < n; ++ix) {
        const cplx* src = b.data() + static_cast<std::size_t>(ix) * P;
        cplx* dst = &out.v[static_cast<std::size_t>(ix) * n];
        std::copy(src, src + n, dst);
    }
    out.apply_mask();
    return out;
}

// c = a .* b accumulated: c += spec .* f
void mul_acc(CBuf& c, const std::vector<cplx>& spec, const CBuf& f) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) c[i] += spec[i] * f[i];
}

void check_same_grid(const PixelGrid& a, const PixelGrid& b, const char* who) {
    if (!(a == b)) throw InvalidArgument(std::string(who) + ": grid mismatch");
}

// Pointwise product of a contrast with a field, masked.
ComplexField hadamard(const ComplexField& a, const ComplexField& b) {
    ComplexField out(a.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
    return out;
}

}  // namespace

FieldState initial_state(const PixelGrid& grid, double px, double py, double k) {
    if (k <= 0.0) throw InvalidArgument("initial_state: k must be positive");
    FieldState s(grid);
    s.k = k;
    s.px = px;
    s.py = py;
    const Vec2 q = q_of_p(px, py);
    s.thx = q.x + px;
    s.thy = q.y + py;
    s.obx = q.x - px;
    s.oby = q.y - py;
    const int n = grid.n;
    for (int ix = 0; ix < n; ++ix) {
        const double x = grid.center(ix);
        for (int iy = 0; iy < n; ++iy) {
            if (!grid.inside(ix, iy)) continue;
            const double y = grid.center(iy);
            const cplx e = std::polar(1.0, k * (s.thx * x + s.thy * y));
            const std::size_t id = grid.index(ix, iy);
            s.u.v[id] = e;
            s.ux.v[id] = cplx(0.0, k * s.thx) * e;
            s.uy.v[id] = cplx(0.0, k * s.thy) * e;
        }
    }
    return s;
}

ConvKernelSet build_kernels(double k, const PixelGrid& grid, int pad) {
    if (pad < 2) throw InvalidArgument("build_kernels: pad must be >= 2 (aliasing)");
    if ((static_cast<long long>(pad) * grid.n) % 2 != 0)
        throw InvalidArgument("build_kernels: pad * n must be even");
    if (k <= 0.0) throw InvalidArgument("build_kernels: k must be positive");

    ConvKernelSet ks(k, grid, pad);
    const int n = grid.n;
    const int P = pad * n;
    ks.P = P;
    const double h = grid.h();
    const double h2 = h * h;
    const std::size_t total = static_cast<std::size_t>(P) * P;

    std::vector<double> lag(P);
    for (int i = 0; i < P; ++i) lag[i] = (((i + P / 2) % P) - P / 2) * h;

    std::vector<cplx> K0(total), K1x(total), K1y(total), K2x(total), K2y(total), K3xx(total),
        K3xy(total), K3yy(total);

    const cplx IG = green_cell_integral(k, h);
    for (int ix = 0; ix < P; ++ix) {
        const double dx = lag[ix];
        for (int iy = 0; iy < P; ++iy) {
            const double dy = lag[iy];
            const std::size_t id = static_cast<std::size_t>(ix) * P + iy;
            const double r = std::hypot(dx, dy);
            if (r >= 2.0) continue;
            if (r == 0.0) {
                K0[id] = k * k * IG;
                K3xx[id] = -(k * k / 2.0) * IG - 0.5;
                K3yy[id] = K3xx[id];
                continue;
            }
            const cplx H0 = hankel1(0, k * r);
            const cplx H1 = hankel1(1, k * r);
            const cplx G = cplx(0.0, 0.25) * H0;
            const cplx gp = cplx(0.0, -0.25 * k) * H1;
            const cplx gpp = cplx(0.0, -0.25 * k * k) * (H0 - H1 / (k * r));
            const double ex = dx / r, ey = dy / r;
            K0[id] = k * k * G * h2;
            K1x[id] = gp * ex * h2;
            K1y[id] = gp * ey * h2;
            K2x[id] = k * k * gp * ex * h2;
            K2y[id] = k * k * gp * ey * h2;
            K3xx[id] = (gpp * ex * ex + gp / r * (1.0 - ex * ex)) * h2;
            K3yy[id] = (gpp * ey * ey + gp / r * (1.0 - ey * ey)) * h2;
            K3xy[id] = (gpp - gp / r) * ex * ey * h2;
        }
    }

    auto to_spec = [&](std::vector<cplx>& K) {
        CBuf b(total);
        std::copy(K.begin(), K.end(), b.data());
        Fft2D::get(P).forward(b.data());
        K.assign(b.data(), b.data() + total);
    };
    to_spec(K0);
    to_spec(K1x);
    to_spec(K1y);
    to_spec(K2x);
    to_spec(K2y);
    to_spec(K3xx);
    to_spec(K3xy);
    to_spec(K3yy);
    ks.s0 = std::move(K0);
    ks.s1x = std::move(K1x);
    ks.s1y = std::move(K1y);
    ks.s2x = std::move(K2x);
    ks.s2y = std::move(K2y);
    ks.s3xx = std::move(K3xx);
    ks.s3xy = std::move(K3xy);
    ks.s3yy = std::move(K3yy);
    return ks;
}

std::shared_ptr<const ConvKernelSet> KernelCache::get(double k, const PixelGrid& grid, int pad) {
    const auto key = std::make_tuple(k, grid.n, pad);
    auto it = store_.find(key);
    if (it != store_.end()) return it->second;
    auto ks = std::make_shared<const ConvKernelSet>(build_kernels(k, grid, pad));
    store_.emplace(key, ks);
    return ks;
}

ComplexField apply_F0(const ConvKernelSet& ker, const ComplexField& f) {
    check_same_grid(ker.grid, f.grid, "apply_F0");
    CBuf fh = padded_fft(f, ker.P);
    CBuf acc(fh.size());
    mul_acc(acc, ker.s0, fh);
    return extract_field(acc, ker.grid, ker.P);
}

ComplexField apply_F1(const ConvKernelSet& ker, const ComplexField& fx, const ComplexField& fy) {
    check_same_grid(ker.grid, fx.grid, "apply_F1");
    check_same_grid(ker.grid, fy.grid, "apply_F1");
    CBuf fxh = padded_fft(fx, ker.P);
    CBuf fyh = padded_fft(fy, ker.P);
    CBuf acc(fxh.size());
    mul_acc(acc, ker.s1x, fxh);
    mul_acc(acc, ker.s1y, fyh);
    return extract_field(acc, ker.grid, ker.P);
}

std::pair<ComplexField, ComplexField> apply_F2(const ConvKernelSet& ker, const ComplexField& f) {
    check_same_grid(ker.grid, f.grid, "apply_F2");
    CBuf fh = padded_fft(f, ker.P);
    CBuf ax(fh.size()), ay(fh.size());
    mul_acc(ax, ker.s2x, fh);
    mul_acc(ay, ker.s2y, fh);
    return {extract_field(ax, ker.grid, ker.P), extract_field(ay, ker.grid, ker.P)};
}

std::pair<ComplexField, ComplexField> apply_F3(const ConvKernelSet& ker, const ComplexField& fx,
                                               const ComplexField& fy) {
    check_same_grid(ker.grid, fx.grid, "apply_F3");
    check_same_grid(ker.grid, fy.grid, "apply_F3");
    CBuf fxh = padded_fft(fx, ker.P);
    CBuf fyh = padded_fft(fy, ker.P);
    CBuf ax(fxh.size()), ay(fxh.size());
    mul_acc(ax, ker.s3xx, fxh);
    mul_acc(ax, ker.s3xy, fyh);
    mul_acc(ay, ker.s3xy, fxh);
    mul_acc(ay, ker.s3yy, fyh);
    return {extract_field(ax, ker.grid, ker.P), extract_field(ay, ker.grid, ker.P)};
}

FieldState born_step(const FieldState& s, const ComplexField& gamma, const ComplexField& eta,
                     const ConvKernelSet& ker) {
    check_same_grid(s.u.grid, gamma.grid, "born_step");
    check_same_grid(s.u.grid, eta.grid, "born_step");
    check_same_grid(s.u.grid, ker.grid, "born_step");
    if (std::abs(ker.k - s.k) > 1e-12 * std::max(1.0, s.k))
        throw InvalidArgument("born_step: kernel frequency does not match state");

    const int P = ker.P;
    CBuf gxh = padded_fft(hadamard(gamma, s.ux), P);
    CBuf gyh = padded_fft(hadamard(gamma, s.uy), P);
    CBuf eh = padded_fft(hadamard(eta, s.u), P);

    CBuf bu(gxh.size()), bx(gxh.size()), by(gxh.size());
    mul_acc(bu, ker.s1x, gxh);
    mul_acc(bu, ker.s1y, gyh);
    mul_acc(bu, ker.s0, eh);
    mul_acc(bx, ker.s3xx, gxh);
    mul_acc(bx, ker.s3xy, gyh);
    mul_acc(bx, ker.s2x, eh);
    mul_acc(by, ker.s3xy, gxh);
    mul_acc(by, ker.s3yy, gyh);
    mul_acc(by, ker.s2y, eh);

    FieldState next(s.u.grid);
    next.k = s.k;
    next.px = s.px;
    next.py = s.py;
    next.thx = s.thx;
    next.thy = s.thy;
    next.obx = s.obx;
    next.oby = s.oby;
    next.order = s.order + 1;
    next.u = extract_field(bu, s.u.grid, P);
    next.ux = extract_field(bx, s.u.grid, P);
    next.uy = extract_field(by, s.u.grid, P);

    const double nrm = disk_norm_l2(next.u);
    next.ref_norm = (next.order == 1) ? nrm : s.ref_norm;
    if (next.ref_norm > 0.0 && nrm > 1e6 * next.ref_norm) {
        std::ostringstream msg;
        msg << "born_step: field norm " << nrm << " exceeds 1e6 * ||u_1|| at order "
            << next.order;
        throw DivergenceDetected(msg.str());
    }
    return next;
}

FieldState born_step(const FieldState& s, const RealField& gamma, const RealField& eta,
                     const ConvKernelSet& ker) {
    return born_step(s, to_complex(gamma), to_complex(eta), ker);
}

cplx farfield_term(const FieldState& s, const ComplexField& gamma, const ComplexField& eta) {
    check_same_grid(s.u.grid, gamma.grid, "farfield_term");
    check_same_grid(s.u.grid, eta.grid, "farfield_term");
    const PixelGrid& g = s.u.grid;
    const int n = g.n;
    const double k = s.k;

    std::vector<cplx> ax(n), ay(n);
    for (int i = 0; i < n; ++i) {
        const double t = g.center(i);
        ax[i] = std::polar(1.0, -k * s.obx * t);
        ay[i] = std::polar(1.0, -k * s.oby * t);
    }
    cplx grad_part = 0.0, pot_part = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const std::size_t row = static_cast<std::size_t>(ix) * n;
        cplx accg = 0.0, accp = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            const std::size_t id = row + iy;
            const cplx gdir = s.obx * s.ux.v[id] + s.oby * s.uy.v[id];
            accg += ay[iy] * (gamma.v[id] * gdir);
            accp += ay[iy] * (eta.v[id] * s.u.v[id]);
        }
        grad_part += ax[ix] * accg;
        pot_part += ax[ix] * accp;
    }
    const double h2 = g.h() * g.h();
    return cplx(0.0, 1.0 / k) * grad_part * h2 + pot_part * h2;
}

cplx farfield_term(const FieldState& s, const RealField& gamma, const RealField& eta) {
    return farfield_term(s, to_complex(gamma), to_complex(eta));
}

bool ScatterDataset::all_converged() const {
    auto ok = [](const std::vector<std::uint8_t>& f) {
        return std::all_of(f.begin(), f.end(), [](std::uint8_t b) { return b != 0; });
    };
    return ok(converged1) && ok(converged2);
}

namespace {

// Series synthesis of one frequency component: nodes scaled by `scale`,
// frequency kc. Fills values, flags, and per-order weighted term norms.
void synth_component(const ComplexField& gamma, const ComplexField& eta, double kc, double scale,
                     const PNodeSet& nodes, const ConvKernelSet& ker, int J_max, double tol,
                     PData& out, std::vector<std::uint8_t>& flags, std::vector<double>& tnorms) {
    const std::size_t N = nodes.size();
    flags.assign(N, 0);
    std::vector<double> tn2;
    for (std::size_t nd = 0; nd < N; ++nd) {
        FieldState st = initial_state(gamma.grid, scale * nodes.px[nd], scale * nodes.py[nd], kc);
        cplx cum = 0.0;
        try {
            for (int j = 1; j <= J_max; ++j) {
                const cplx t = farfield_term(st, gamma, eta);
                cum += t;
                if (tn2.size() < static_cast<std::size_t>(j)) tn2.push_back(0.0);
                tn2[j - 1] += nodes.w[nd] * std::norm(t);
                if (std::abs(t) <= tol * std::abs(cum)) {
                    flags[nd] = 1;
                    break;
                }
                if (j < J_max) st = born_step(st, gamma, eta, ker);
            }
        } catch (const DivergenceDetected& e) {
            std::ostringstream msg;
            msg << e.what() << " (node " << nd << ", frequency " << kc << ")";
            throw DivergenceDetected(msg.str());
        }
        out.v[nd] = cum;
    }
    tnorms.resize(tn2.size());
    for (std::size_t j = 0; j < tn2.size(); ++j) tnorms[j] = std::sqrt(tn2[j]);
}

}  // namespace

ScatterDataset synthesize(const RealField& gamma, const RealField& eta, double k, double ell,
                          std::shared_ptr<const PNodeSet> nodes, int J_max, double tol,
                          KernelCache* cache) {
    if (!nodes) throw InvalidArgument("synthesize: null node set");
    if (ell <= 1.0) throw InvalidArgument("synthesize: ell must exceed 1");
    if (J_max < 1) throw InvalidArgument("synthesize: J_max must be >= 1");
    check_same_grid(gamma.grid, eta.grid, "synthesize");

    KernelCache local;
    KernelCache& kc = cache ? *cache : local;
    const ComplexField gm = to_complex(gamma);
    const ComplexField em = to_complex(eta);

    ScatterDataset ds;
    ds.nodes = nodes;
    ds.k = k;
    ds.ell = ell;
    ds.comp1 = PData(nodes, k);
    ds.comp2 = PData(nodes, ell * k);
    auto ker1 = kc.get(k, gamma.grid);
    auto ker2 = kc.get(ell * k, gamma.grid);
    synth_component(gm, em, k, 1.0, *nodes, *ker1, J_max, tol, ds.comp1, ds.converged1,
                    ds.term_norms1);
    synth_component(gm, em, ell * k, 1.0 / ell, *nodes, *ker2, J_max, tol, ds.comp2,
                    ds.converged2, ds.term_norms2);
    std::ostringstream prov;
    prov << "synthesized series J_max=" << J_max << " tol=" << tol << " k=" << k
         << " ell=" << ell << " n=" << gamma.grid.n;
    ds.provenance = prov.str();
    return ds;
}

ScatterDataset add_noise(const ScatterDataset& data, double level, std::uint64_t seed) {
    if (level < 0.0) throw InvalidArgument("add_noise: level must be >= 0");
    ScatterDataset out = data;
    std::ostringstream prov;
    prov << data.provenance << "; noise level=" << level << " seed=" << seed;
    out.provenance = prov.str();
    if (level == 0.0) return out;

    Rng root(seed);
    auto perturb = [&](PData& comp, std::uint64_t stream) {
        Rng r = root.split(stream);
        const std::size_t N = comp.v.size();
        std::vector<cplx> delta(N);
        double nd2 = 0.0, nc2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double re = r.normal();
            const double im = r.normal();
            delta[i] = cplx(re, im);
            nd2 += std::norm(delta[i]);
            nc2 += std::norm(comp.v[i]);
        }
        if (nd2 == 0.0) return;
        const double s = level * std::sqrt(nc2 / nd2);
        for (std::size_t i = 0; i < N; ++i) comp.v[i] += s * delta[i];
    };
    perturb(out.comp1, 1);
    perturb(out.comp2, 2);
    return out;
}

std::pair<PData, PData> apply_Km(const std::vector<const ComplexField*>& gammas,
                                 const std::vector<const ComplexField*>& etas, double k,
                                 double ell, std::shared_ptr<const PNodeSet> nodes,
                                 KernelCache& cache, int pad) {
    if (gammas.empty() || gammas.size() != etas.size())
        throw InvalidArgument("apply_Km: argument tuple must be non-empty and paired");
    if (!nodes) throw InvalidArgument("apply_Km: null node set");
    if (ell <= 1.0) throw InvalidArgument("apply_Km: ell must exceed 1");
    const std::size_t m = gammas.size();
    const PixelGrid& grid = gammas[0]->grid;
    for (std::size_t t = 0; t < m; ++t) {
        check_same_grid(gammas[t]->grid, grid, "apply_Km");
        check_same_grid(etas[t]->grid, grid, "apply_Km");
    }

    PData out1(nodes, k);
    PData out2(nodes, ell * k);
    const double freqs[2] = {k, ell * k};
    const double scales[2] = {1.0, 1.0 / ell};
    for (int c = 0; c < 2; ++c) {
        auto ker = cache.get(freqs[c], grid, pad);
        PData& out = (c == 0) ? out1 : out2;
        for (std::size_t nd = 0; nd < nodes->size(); ++nd) {
            FieldState st = initial_state(grid, scales[c] * nodes->px[nd],
                                          scales[c] * nodes->py[nd], freqs[c]);
            for (std::size_t t = 0; t + 1 < m; ++t)
                st = born_step(st, *gammas[t], *etas[t], *ker);
            out.v[nd] = farfield_term(st, *gammas[m - 1], *etas[m - 1]);
        }
    }
    return {out1, out2};
}

}  // namespace ibs2
