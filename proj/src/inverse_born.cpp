#include "ibs2/inverse_born.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ibs2 {

Mat2 A_matrix(double px, double py, double ell) {
    if (ell <= 1.0) throw InvalidArgument("A_matrix: ell must exceed 1");
    const double r2 = px * px + py * py;
    return {2.0 * r2 - 1.0, 1.0, 2.0 * r2 / (ell * ell) - 1.0, 1.0};
}

Mat2 A_dagger(double px, double py, double ell, double epsilon) {
    if (ell <= 1.0) throw InvalidArgument("A_dagger: ell must exceed 1");
    if (epsilon <= 0.0) throw InvalidArgument("A_dagger: epsilon must be positive");
    const double r2 = px * px + py * py;
    const double rr = std::max(epsilon, std::sqrt(r2));
    const double pref = ell * ell / (2.0 * rr * rr * (ell * ell - 1.0));
    return {pref, -pref, pref * (1.0 - 2.0 * r2 / (ell * ell)), pref * (2.0 * r2 - 1.0)};
}

double pair_norm(const ComplexField& a, const ComplexField& b) {
    const double na = disk_norm_l2(a), nb = disk_norm_l2(b);
    return std::sqrt(na * na + nb * nb);
}

std::pair<ComplexField, ComplexField> K1_dagger_apply(const PData& d1, const PData& d2,
                                                      double ell, double epsilon,
                                                      const BasisNodeTable& table,
                                                      const BasisRaster& raster) {
    if (!d1.nodes || d1.nodes.get() != d2.nodes.get())
        throw InvalidArgument("K1_dagger_apply: components must share one node set");
    const PNodeSet& nodes = *d1.nodes;
    PData g1(d1.nodes, d1.k), g2(d1.nodes, d1.k);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Mat2 A = A_dagger(nodes.px[i], nodes.py[i], ell, epsilon);
        g1.v[i] = A.a11 * d1.v[i] + A.a12 * d2.v[i];
        g2.v[i] = A.a21 * d1.v[i] + A.a22 * d2.v[i];
    }
    return {pseudo_inverse_Fk(g1, table, raster), pseudo_inverse_Fk(g2, table, raster)};
}

namespace {

double resolve_epsilon(const ReconParams& p, const PNodeSet& nodes) {
    return p.epsilon > 0.0 ? p.epsilon : nodes.min_radius();
}

void check_dataset(const ScatterDataset& phi, const PswfBasis& basis) {
    if (!phi.nodes) throw InvalidArgument("reconstruction: dataset has no node set");
    if (phi.ell <= 1.0) throw InvalidArgument("reconstruction: dataset ell must exceed 1");
    if (std::abs(basis.c - 2.0 * phi.k) > 1e-9 * std::max(1.0, basis.c))
        throw InvalidArgument(
            "reconstruction: basis bandwidth must equal 2k of the dataset's lower frequency");
}

struct SeriesWorkspace {
    const PixelGrid& grid;
    std::shared_ptr<const PNodeSet> nodes;
    KernelCache& cache;
    // the current term fields used as operator arguments
    std::vector<const ComplexField*> gam_args, eta_args;
};

// Inner sum over all ordered compositions of j into m >= 2 parts, sharing
// common prefixes of the recursion: one depth-first pass per node and
// frequency component. Accumulates into (acc1, acc2).
void accumulate_inner_sum(SeriesWorkspace& ws, int j, double k_term, double ell_term,
                          PData& acc1, PData& acc2) {
    const double freqs[2] = {k_term, ell_term * k_term};
    const double scales[2] = {1.0, 1.0 / ell_term};
    for (int c = 0; c < 2; ++c) {
        auto ker = ws.cache.get(freqs[c], ws.grid);
        PData& acc = (c == 0) ? acc1 : acc2;
        for (std::size_t nd = 0; nd < ws.nodes->size(); ++nd) {
            cplx total = 0.0;
            // Iterative DFS over composition prefixes. depth counts chosen
            // parts; a part that exhausts j at depth >= 1 closes a tuple of
            // length >= 2 and contributes a far-field evaluation.
            struct Frame {
                FieldState state;
                int remaining;
                int next_part;
                int depth;
            };
            std::vector<Frame> stack;
            stack.push_back({initial_state(ws.grid, scales[c] * ws.nodes->px[nd],
                                           scales[c] * ws.nodes->py[nd], freqs[c]),
                             j, 1, 0});
            while (!stack.empty()) {
                Frame& f = stack.back();
                if (f.next_part > f.remaining) {
                    stack.pop_back();
                    continue;
                }
                const int i = f.next_part++;
                const ComplexField& g = *ws.gam_args[i - 1];
                const ComplexField& e = *ws.eta_args[i - 1];
                if (i == f.remaining) {
                    if (f.depth >= 1) total += farfield_term(f.state, g, e);
                } else {
                    Frame child{born_step(f.state, g, e, *ker), f.remaining - i, 1,
                                f.depth + 1};
                    stack.push_back(std::move(child));
                }
            }
            acc.v[nd] = total;
        }
    }
}

ReconResult run_series(const ScatterDataset& phi,
                       const ReconParams& params, const PixelGrid& grid, KernelCache& cache,
                       const BasisNodeTable& table, const BasisRaster& raster,
                       bool real_projected) {
    const double eps = resolve_epsilon(params, *phi.nodes);
    ReconResult res;
    res.N_requested = params.N;
    res.epsilon_used = eps;

    auto push_term = [&](std::pair<ComplexField, ComplexField>&& t) {
        if (res.partial_sums.empty()) {
            res.partial_sums.emplace_back(t.first, t.second);
        } else {
            std::pair<ComplexField, ComplexField> s = res.partial_sums.back();
            for (std::size_t i = 0; i < s.first.v.size(); ++i) {
                s.first.v[i] += t.first.v[i];
                s.second.v[i] += t.second.v[i];
            }
            res.partial_sums.push_back(std::move(s));
        }
        res.term_norms.push_back(pair_norm(t.first, t.second));
        const double h2 = t.first.grid.h() * t.first.grid.h();
        double im2 = 0.0;
        for (std::size_t i = 0; i < t.first.v.size(); ++i) {
            im2 += t.first.v[i].imag() * t.first.v[i].imag();
            im2 += t.second.v[i].imag() * t.second.v[i].imag();
        }
        res.imag_residuals.push_back(std::sqrt(h2 * im2));
        res.terms.push_back(std::move(t));
    };

    push_term(K1_dagger_apply(phi.comp1, phi.comp2, phi.ell, eps, table, raster));

    SeriesWorkspace ws{grid, phi.nodes, cache, {}, {}};
    std::vector<std::pair<ComplexField, ComplexField>> arg_fields;  // possibly real-projected

    for (int j = 2; j <= params.N; ++j) {
        double k_term = phi.k, lk_term = phi.ell * phi.k;
        const std::size_t cfg = static_cast<std::size_t>(j - 2);
        if (cfg < params.term_frequencies.size()) {
            k_term = params.term_frequencies[cfg].first;
            lk_term = params.term_frequencies[cfg].second;
        }
        if (!(k_term > 0.0) || !(lk_term > k_term))
            throw InvalidArgument("ibs_reconstruct: term frequency pair must be ordered");
        const double ell_term = lk_term / k_term;

        arg_fields.clear();
        ws.gam_args.clear();
        ws.eta_args.clear();
        for (const auto& t : res.terms) {
            if (real_projected) {
                arg_fields.emplace_back(to_complex(real_part(t.first)),
                                        to_complex(real_part(t.second)));
            } else {
                arg_fields.emplace_back(t.first, t.second);
            }
        }
        for (const auto& t : arg_fields) {
            ws.gam_args.push_back(&t.first);
            ws.eta_args.push_back(&t.second);
        }

        PData acc1(phi.nodes, phi.k), acc2(phi.nodes, phi.k);
        try {
            accumulate_inner_sum(ws, j, k_term, ell_term, acc1, acc2);
        } catch (const DivergenceDetected& e) {
            res.truncated = true;
            std::ostringstream msg;
            msg << "inner operator diverged while assembling term " << j
                << "; series truncated at " << (j - 1) << " (" << e.what() << ")";
            res.warning = msg.str();
            break;
        }
        auto psi = K1_dagger_apply(acc1, acc2, phi.ell, eps, table, raster);
        for (auto& z : psi.first.v) z = -z;
        for (auto& z : psi.second.v) z = -z;
        push_term(std::move(psi));
    }

    res.N_completed = static_cast<int>(res.terms.size());
    for (std::size_t j = 1; j < res.term_norms.size(); ++j)
        res.ratios.push_back(res.term_norms[j] / std::max(res.term_norms[j - 1], 1e-300));
    return res;
}

}  // namespace

std::pair<ComplexField, ComplexField> K1_dagger(const ScatterDataset& phi,
                                                std::shared_ptr<const PswfBasis> basis,
                                                const ReconParams& params,
                                                const PixelGrid& grid) {
    if (!basis) throw InvalidArgument("K1_dagger: null basis");
    check_dataset(phi, *basis);
    const BasisNodeTable table = tabulate_basis(basis, phi.nodes);
    const BasisRaster raster = rasterize_basis(basis, grid);
    return K1_dagger_apply(phi.comp1, phi.comp2, phi.ell,
                           resolve_epsilon(params, *phi.nodes), table, raster);
}

ReconResult ibs_reconstruct(const ScatterDataset& phi, std::shared_ptr<const PswfBasis> basis,
                            const ReconParams& params, const PixelGrid& grid,
                            KernelCache* cache) {
    if (!basis) throw InvalidArgument("ibs_reconstruct: null basis");
    check_dataset(phi, *basis);
    if (params.N < 1) throw InvalidArgument("ibs_reconstruct: N must be >= 1");
    if (params.N > 12)
        throw InvalidArgument(
            "ibs_reconstruct: N > 12 refused (composition count grows exponentially)");
    if (!(params.alpha_tilde > 0.0 && params.alpha_tilde < 1.0))
        throw InvalidArgument("ibs_reconstruct: alpha_tilde must lie in (0,1)");

    KernelCache local;
    KernelCache& kc = cache ? *cache : local;
    const BasisNodeTable table = tabulate_basis(basis, phi.nodes);
    const BasisRaster raster = rasterize_basis(basis, grid);

    ReconResult res = run_series(phi, params, grid, kc, table, raster, false);
    if (params.real_projected_diagnostic) {
        ReconResult alt = run_series(phi, params, grid, kc, table, raster, true);
        const auto& a = res.partial_sums.back();
        const auto& b = alt.partial_sums.back();
        ComplexField dg(a.first.grid), de(a.second.grid);
        for (std::size_t i = 0; i < dg.v.size(); ++i) {
            dg.v[i] = a.first.v[i] - b.first.v[i];
            de.v[i] = a.second.v[i] - b.second.v[i];
        }
        res.real_projection_delta = pair_norm(dg, de);
    }
    return res;
}

ConvergenceReport convergence_diagnostics(const ReconResult& result, const BoundsReport& bounds) {
    ConvergenceReport rep;
    if (result.term_norms.empty()) return rep;
    rep.psi1_norm = result.term_norms.front();
    rep.radius = bounds.radius_l2 > 0.0 ? bounds.radius_l2 : bounds.radius_inf;
    rep.C_ratio = rep.radius > 0.0 ? rep.psi1_norm / rep.radius : 0.0;
    rep.term_ratios = result.ratios;
    rep.predicted_convergent = rep.radius > 0.0 && rep.psi1_norm < rep.radius;
    int run = 0;
    for (double r : result.ratios) {
        run = (r > 1.0) ? run + 1 : 0;
        if (run >= 3) {
            rep.empirical_divergence = true;
            break;
        }
    }
    return rep;
}

}  // namespace ibs2
