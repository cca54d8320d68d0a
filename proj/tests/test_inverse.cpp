#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ibs2/analysis.hpp"
#include "ibs2/born_forward.hpp"
#include "ibs2/fourier.hpp"
#include "ibs2/inverse_born.hpp"
#include "ibs2/media.hpp"
#include "ibs2/rng.hpp"

using namespace ibs2;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("inverse");

TEST_CASE("row matrix and its regularized inverse") {
    const double ell = 2.0, eps = 0.1;
    Rng rng(5);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double r = eps + (1.0 - eps) * rng.uniform();
        const double t = 2.0 * kPi * rng.uniform();
        const double px = r * std::cos(t), py = r * std::sin(t);
        const Mat2 A = A_matrix(px, py, ell);
        // determinant 2|p|^2 (1 - ell^{-2})
        const double det = A.a11 * A.a22 - A.a12 * A.a21;
        CHECK(det == doctest::Approx(2.0 * r * r * (1.0 - 1.0 / (ell * ell))).epsilon(1e-12));
        const Mat2 D = A_dagger(px, py, ell, eps);
        // D * A = I entrywise
        worst = std::max({worst, std::abs(D.a11 * A.a11 + D.a12 * A.a21 - 1.0),
                          std::abs(D.a11 * A.a12 + D.a12 * A.a22),
                          std::abs(D.a21 * A.a11 + D.a22 * A.a21),
                          std::abs(D.a21 * A.a12 + D.a22 * A.a22 - 1.0)});
    }
    CHECK(worst <= 1e-14);

    // below the clamp the inverse stays finite (no division blow-up)
    const Mat2 D0 = A_dagger(0.0, 0.0, ell, eps);
    for (double v : {D0.a11, D0.a12, D0.a21, D0.a22}) CHECK(std::isfinite(v));
}

TEST_CASE("regularized chain is near-identity on the retained span") {
    const double k = 5.0, ell = 2.0;
    PixelGrid grid(64);
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    const BasisRaster raster = rasterize_basis(basis, grid);
    const BasisNodeTable table = tabulate_basis(basis, nodes);

    Rng rng(41);
    SpectralCoeffs cg, ce;
    cg.basis = basis;
    ce.basis = basis;
    cg.coef.resize(basis->entries.size());
    ce.coef.resize(basis->entries.size());
    for (auto& c : cg.coef) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (auto& c : ce.coef) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const ComplexField gamma = synthesize_from_coeffs(cg, raster);
    const ComplexField eta = synthesize_from_coeffs(ce, raster);

    KernelCache cache;
    const auto data = apply_Km({&gamma}, {&eta}, k, ell, nodes, cache);
    const auto rec = K1_dagger_apply(data.first, data.second, ell, nodes->min_radius(), table, raster);

    const SpectralCoeffs rg = project(rec.first, raster);
    const SpectralCoeffs re = project(rec.second, raster);
    double num = 0.0, den = 0.0;
    for (std::size_t e = 0; e < cg.coef.size(); ++e) {
        num += std::norm(rg.coef[e] - cg.coef[e]) + std::norm(re.coef[e] - ce.coef[e]);
        den += std::norm(cg.coef[e]) + std::norm(ce.coef[e]);
    }
    CHECK(std::sqrt(num / den) < 5e-3);
}

TEST_CASE("series parameters are validated") {
    const double k = 5.0, ell = 2.0;
    PixelGrid grid(48);
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    MediaSpec spec;
    spec.seed = 61;
    spec.magnitude_gamma = spec.magnitude_eta = 0.02;
    auto [gamma, eta] = generate_media(spec, grid);
    KernelCache cache;
    const ScatterDataset data = synthesize(gamma, eta, k, ell, nodes, 10, 1e-8, &cache);

    ReconParams p;
    p.N = 0;
    CHECK_THROWS_AS(ibs_reconstruct(data, basis, p, grid, &cache), InvalidArgument);
    p.N = 13;
    CHECK_THROWS_AS(ibs_reconstruct(data, basis, p, grid, &cache), InvalidArgument);
    p.N = 2;
    p.alpha_tilde = 1.0;
    CHECK_THROWS_AS(ibs_reconstruct(data, basis, p, grid, &cache), InvalidArgument);
    p.alpha_tilde = 0.9;
    p.term_frequencies = {{10.0, 5.0}};  // must be an increasing pair
    CHECK_THROWS_AS(ibs_reconstruct(data, basis, p, grid, &cache), InvalidArgument);
}

TEST_CASE("third term expands into the hand-built inner sum") {
    // psi_3 = -K1dag( K2(psi_1, psi_2) + K2(psi_2, psi_1) + K3(psi_1, psi_1, psi_1) )
    const double k = 5.0, ell = 2.0;
    PixelGrid grid(48);
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    const BasisRaster raster = rasterize_basis(basis, grid);
    const BasisNodeTable table = tabulate_basis(basis, nodes);

    MediaSpec spec;
    spec.seed = 62;
    spec.magnitude_gamma = spec.magnitude_eta = 0.05;
    auto [gamma, eta] = generate_media(spec, grid);
    KernelCache cache;
    const ScatterDataset data = synthesize(gamma, eta, k, ell, nodes, 20, 1e-10, &cache);

    ReconParams p;
    p.N = 3;
    const ReconResult res = ibs_reconstruct(data, basis, p, grid, &cache);
    REQUIRE(res.N_completed == 3);
    const ComplexField& p1g = res.terms[0].first;
    const ComplexField& p1e = res.terms[0].second;
    const ComplexField& p2g = res.terms[1].first;
    const ComplexField& p2e = res.terms[1].second;

    const auto t12 = apply_Km({&p1g, &p2g}, {&p1e, &p2e}, k, ell, nodes, cache);
    const auto t21 = apply_Km({&p2g, &p1g}, {&p2e, &p1e}, k, ell, nodes, cache);
    const auto t111 = apply_Km({&p1g, &p1g, &p1g}, {&p1e, &p1e, &p1e}, k, ell, nodes, cache);
    PData sum1(nodes, k), sum2(nodes, ell * k);
    for (std::size_t n = 0; n < nodes->size(); ++n) {
        sum1.v[n] = t12.first.v[n] + t21.first.v[n] + t111.first.v[n];
        sum2.v[n] = t12.second.v[n] + t21.second.v[n] + t111.second.v[n];
    }
    auto psi3 = K1_dagger_apply(sum1, sum2, ell, res.epsilon_used, table, raster);
    double worst = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < psi3.first.v.size(); ++i) {
        worst = std::max(worst, std::abs(-psi3.first.v[i] - res.terms[2].first.v[i]));
        worst = std::max(worst, std::abs(-psi3.second.v[i] - res.terms[2].second.v[i]));
        mag = std::max({mag, std::abs(res.terms[2].first.v[i]),
                        std::abs(res.terms[2].second.v[i])});
    }
    CHECK(worst < 1e-10 * std::max(mag, 1e-30));
}

TEST_CASE("second term scales quadratically with the contrast size") {
    const double k = 5.0, ell = 2.0;
    PixelGrid grid(48);
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    KernelCache cache;

    auto term2_norm = [&](double s) {
        MediaSpec spec;
        spec.seed = 63;
        spec.magnitude_gamma = spec.magnitude_eta = s;
        auto [gamma, eta] = generate_media(spec, grid);
        const ScatterDataset data = synthesize(gamma, eta, k, ell, nodes, 20, 1e-10, &cache);
        ReconParams p;
        p.N = 2;
        const ReconResult res = ibs_reconstruct(data, basis, p, grid, &cache);
        return res.term_norms[1];
    };
    const double n1 = term2_norm(0.004);
    const double n2 = term2_norm(0.008);
    const double slope = std::log(n2 / n1) / std::log(2.0);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.06));
}

TEST_CASE("diagnostics flag a divergent tail") {
    ReconResult r;
    r.term_norms = {1.0, 1.1, 1.3, 1.6};
    r.ratios = {1.1, 1.1818, 1.2308};
    BoundsReport b;
    b.radius_l2 = 0.5;
    const ConvergenceReport d = convergence_diagnostics(r, b);
    CHECK(d.empirical_divergence);
    CHECK(d.psi1_norm == doctest::Approx(1.0));
    CHECK(d.C_ratio == doctest::Approx(2.0));
    CHECK_FALSE(d.predicted_convergent);

    ReconResult ok;
    ok.term_norms = {0.1, 0.01};
    ok.ratios = {0.1};
    const ConvergenceReport d2 = convergence_diagnostics(ok, b);
    CHECK_FALSE(d2.empirical_divergence);
    CHECK(d2.predicted_convergent);
}

TEST_SUITE_END();
